#pragma once

// Umbrella header for the taxonomy-fusion toolkit.

#include "taxfuse/classifier.hpp"
#include "taxfuse/dataset.hpp"
#include "taxfuse/encoding.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/evaluation.hpp"
#include "taxfuse/features.hpp"
#include "taxfuse/fingerprint.hpp"
#include "taxfuse/mapping.hpp"
#include "taxfuse/model_io.hpp"
#include "taxfuse/pipeline.hpp"
#include "taxfuse/rng.hpp"
#include "taxfuse/synthetic.hpp"
#include "taxfuse/taxonomy.hpp"
