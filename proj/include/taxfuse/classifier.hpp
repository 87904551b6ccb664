#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taxfuse/dataset.hpp"
#include "taxfuse/encoding.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/features.hpp"
#include "taxfuse/rng.hpp"
#include "taxfuse/taxonomy.hpp"

namespace taxfuse {

struct TrainConfig {
    int epochs = 4;
    int batch_size = 6;
    // Step size for batch k (1-based) is learning_rate / sqrt(k). Features are
    // L2-normalized and gradients are batch means, so units here are large.
    double learning_rate = 16.0;
    double l2 = 1e-4;
    int eval_every = 500;  // telemetry cadence, in batches
    std::uint64_t seed = 0;
    double threshold = 0.5;
};

inline void validate(const TrainConfig& cfg) {
    if (cfg.epochs < 1) raise(Errc::Precondition, "epochs must be >= 1");
    if (cfg.batch_size < 1) raise(Errc::Precondition, "batch_size must be >= 1");
    if (!(cfg.learning_rate > 0.0)) raise(Errc::Precondition, "learning_rate must be > 0");
    if (cfg.l2 < 0.0) raise(Errc::Precondition, "l2 must be >= 0");
    if (cfg.eval_every < 1) raise(Errc::Precondition, "eval_every must be >= 1");
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) raise(Errc::Precondition, "threshold must be in (0,1)");
}

struct TrainEvent {
    int batch;        // global 1-based batch index
    int epoch;        // 1-based
    double mean_loss; // objective averaged over the telemetry window
};

using TrainLog = std::function<void(const TrainEvent&)>;

// Per-node linear scorer over hashed text features.
struct ClassifierModel {
    std::uint32_t feature_dim = kDefaultFeatureDim;
    int node_count = 0;
    std::string taxonomy_fingerprint;  // hex SHA-256 of the training taxonomy
    std::vector<double> weights;       // row-major [node_count][feature_dim]
    std::vector<double> bias;          // [node_count]

    double& w(int node, std::uint32_t feature) {
        return weights[static_cast<std::size_t>(node) * feature_dim + feature];
    }
    double w(int node, std::uint32_t feature) const {
        return weights[static_cast<std::size_t>(node) * feature_dim + feature];
    }
};

namespace detail {

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// -[y log p + (1-y) log(1-p)] for p = sigmoid(logit), computed on logits.
inline double bce(double logit, double y) {
    return std::max(logit, 0.0) - y * logit + std::log1p(std::exp(-std::abs(logit)));
}

}  // namespace detail

// Binary training target for a record: the soft map when present, otherwise
// the ancestor-closed encoding of its hard labels.
inline LabelVector training_target(const Taxonomy& t, const Record& r) {
    if (!r.soft) return encode(t, r.labels);
    LabelVector y(static_cast<std::size_t>(t.node_count()), 0.0);
    for (const auto& [path, score] : *r.soft) {
        y[static_cast<std::size_t>(t.index_of(path))] = score;
    }
    return y;
}

// Mini-batch SGD on  (1/B) sum_records sum_nodes BCE(logit, y)  +  l2*||W||^2
// (bias excluded from the penalty). Batches walk a per-epoch reshuffle of the
// data; step size decays as learning_rate / sqrt(global batch index). The L2
// term is applied as a scalar on the weight matrix, so sparse rows stay cheap.
// Deterministic for a fixed (data, config, init).
inline ClassifierModel train(const Taxonomy& t, const Dataset& d, const TrainConfig& cfg,
                             const std::optional<ClassifierModel>& init = std::nullopt,
                             std::uint32_t feature_dim = kDefaultFeatureDim,
                             const TrainLog& log = nullptr) {
    validate(cfg);
    if (d.records.empty()) raise(Errc::EmptyDataset, "no records to train on");
    if (!d.taxonomy_fingerprint.empty() && d.taxonomy_fingerprint != t.fingerprint()) {
        raise(Errc::FingerprintMismatch, "dataset is bound to a different taxonomy");
    }
    const int n_nodes = t.node_count();
    ClassifierModel model;
    if (init) {
        if (init->taxonomy_fingerprint != t.fingerprint() || init->node_count != n_nodes) {
            raise(Errc::FingerprintMismatch, "warm-start model was trained under a different taxonomy");
        }
        if (init->feature_dim != feature_dim) {
            raise(Errc::FormatError, "warm-start model has feature_dim " + std::to_string(init->feature_dim) +
                                         ", expected " + std::to_string(feature_dim));
        }
        model = *init;
    } else {
        model.feature_dim = feature_dim;
        model.node_count = n_nodes;
        model.taxonomy_fingerprint = t.fingerprint();
        model.weights.assign(static_cast<std::size_t>(n_nodes) * feature_dim, 0.0);
        model.bias.assign(static_cast<std::size_t>(n_nodes), 0.0);
    }

    const std::size_t n = d.records.size();
    std::vector<FeatureVector> features(n);
    std::vector<LabelVector> targets(n);
    for (std::size_t i = 0; i < n; ++i) {
        features[i] = featurize(d.records[i].text, feature_dim);
        targets[i] = training_target(t, d.records[i]);
    }

    // Weights are stored as raw values v with a shared scale s (w = s*v); the
    // per-batch L2 shrink is then one multiply instead of a full-matrix pass.
    double scale = 1.0;
    double weight_sumsq = 0.0;  // of the effective weights, for loss telemetry
    for (double v : model.weights) weight_sumsq += v * v;

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    int global_batch = 0;
    double window_loss = 0.0;
    int window_batches = 0;
    std::vector<double> logits(static_cast<std::size_t>(n_nodes));
    std::vector<double> grad_bias(static_cast<std::size_t>(n_nodes));

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
            const double batch_n = static_cast<double>(end - start);
            ++global_batch;
            const double lr = cfg.learning_rate / std::sqrt(static_cast<double>(global_batch));

            std::fill(grad_bias.begin(), grad_bias.end(), 0.0);
            std::map<std::uint32_t, std::vector<double>> grad_w;  // feature -> per-node grad
            double batch_bce = 0.0;
            for (std::size_t bi = start; bi < end; ++bi) {
                const FeatureVector& x = features[order[bi]];
                const LabelVector& y = targets[order[bi]];
                for (int node = 0; node < n_nodes; ++node) {
                    double logit = model.bias[static_cast<std::size_t>(node)];
                    for (const FeatureEntry& e : x.entries) {
                        logit += model.w(node, e.index) * e.value * scale;
                    }
                    logits[static_cast<std::size_t>(node)] = logit;
                    batch_bce += detail::bce(logit, y[static_cast<std::size_t>(node)]);
                }
                for (int node = 0; node < n_nodes; ++node) {
                    const double delta =
                        (detail::sigmoid(logits[static_cast<std::size_t>(node)]) - y[static_cast<std::size_t>(node)]) /
                        batch_n;
                    grad_bias[static_cast<std::size_t>(node)] += delta;
                    if (delta == 0.0) continue;
                    for (const FeatureEntry& e : x.entries) {
                        auto [it, fresh] = grad_w.try_emplace(e.index);
                        if (fresh) it->second.assign(static_cast<std::size_t>(n_nodes), 0.0);
                        it->second[static_cast<std::size_t>(node)] += delta * e.value;
                    }
                }
            }

            // L2 shrink, then the data step (divided by the new scale so the
            // effective update is exactly -lr * gradient). ||W||^2 is tracked
            // incrementally for telemetry.
            const double shrink = 1.0 - lr * 2.0 * cfg.l2;
            scale *= shrink;
            if (scale <= 0.0) raise(Errc::Precondition, "l2 * learning_rate too large; weights collapsed");
            weight_sumsq *= shrink * shrink;
            for (const auto& [feature, g] : grad_w) {
                for (int node = 0; node < n_nodes; ++node) {
                    if (g[static_cast<std::size_t>(node)] == 0.0) continue;
                    const double old_eff = model.w(node, feature) * scale;
                    model.w(node, feature) -= lr * g[static_cast<std::size_t>(node)] / scale;
                    const double new_eff = model.w(node, feature) * scale;
                    weight_sumsq += new_eff * new_eff - old_eff * old_eff;
                }
            }
            for (int node = 0; node < n_nodes; ++node) {
                model.bias[static_cast<std::size_t>(node)] -= lr * grad_bias[static_cast<std::size_t>(node)];
            }
            if (scale < 1e-6) {  // fold before raw values drift out of range
                for (double& v : model.weights) v *= scale;
                scale = 1.0;
            }

            if (log) {
                window_loss += batch_bce / batch_n + cfg.l2 * weight_sumsq;
                ++window_batches;
                if (global_batch % cfg.eval_every == 0) {
                    log(TrainEvent{global_batch, epoch, window_loss / window_batches});
                    window_loss = 0.0;
                    window_batches = 0;
                }
            }
        }
    }
    for (double& v : model.weights) v *= scale;
    return model;
}

// sigmoid(W x + b), closed upward; every score strictly inside (0,1).
inline LabelVector predict(const ClassifierModel& m, const Taxonomy& t, std::string_view text) {
    if (m.taxonomy_fingerprint != t.fingerprint() || m.node_count != t.node_count()) {
        raise(Errc::FingerprintMismatch, "model was trained under a different taxonomy");
    }
    FeatureVector x = featurize(text, m.feature_dim);
    LabelVector scores(static_cast<std::size_t>(m.node_count));
    for (int node = 0; node < m.node_count; ++node) {
        double logit = m.bias[static_cast<std::size_t>(node)];
        for (const FeatureEntry& e : x.entries) logit += m.w(node, e.index) * e.value;
        scores[static_cast<std::size_t>(node)] = detail::sigmoid(logit);
    }
    return close_upward(t, scores);
}

}  // namespace taxfuse
