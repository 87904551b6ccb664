#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taxfuse/rng.hpp"

namespace taxfuse {

inline constexpr std::uint32_t kDefaultFeatureDim = 1u << 18;

struct FeatureEntry {
    std::uint32_t index;
    double value;
};

// Sparse L2-normalized bag of hashed unigrams + adjacent bigrams.
struct FeatureVector {
    std::vector<FeatureEntry> entries;  // sorted by index, unique
};

// Tokens are maximal runs of word characters, lowercased. Word characters:
// ASCII alphanumerics, '+', and any byte >= 0x80 (so UTF-8 text stays in one
// piece); lowercasing touches ASCII only.
inline std::vector<std::string> tokenize(std::string_view text) {
    auto is_word = [](unsigned char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               c == '+' || c >= 0x80;
    };
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (is_word(c)) {
            cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

// Feature index = FNV-1a-64(feature bytes) mod feature_dim. Bigram features
// join their tokens with 0x1F. Counts colliding into one slot merge before
// the L2 normalization.
inline FeatureVector featurize(std::string_view text, std::uint32_t feature_dim = kDefaultFeatureDim) {
    std::vector<std::string> tokens = tokenize(text);
    std::map<std::uint32_t, double> counts;
    auto bump = [&](std::string_view feature) {
        counts[static_cast<std::uint32_t>(fnv1a64(feature) % feature_dim)] += 1.0;
    };
    for (const std::string& tok : tokens) bump(tok);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) bump(tokens[i] + '\x1f' + tokens[i + 1]);

    FeatureVector v;
    v.entries.reserve(counts.size());
    double sumsq = 0.0;
    for (const auto& [index, count] : counts) sumsq += count * count;
    const double norm = std::sqrt(sumsq);
    for (const auto& [index, count] : counts) v.entries.push_back({index, count / norm});
    return v;
}

}  // namespace taxfuse
