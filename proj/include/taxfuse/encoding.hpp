#pragma once

#include <set>
#include <string>
#include <vector>

#include "taxfuse/error.hpp"
#include "taxfuse/taxonomy.hpp"

namespace taxfuse {

// Per-node score vector over the taxonomy's pre-order index, values in [0,1].
// A binary vector is "closed" when every positive node has a positive parent.
using LabelVector = std::vector<double>;

inline void check_length(const Taxonomy& t, const LabelVector& v) {
    if (static_cast<int>(v.size()) != t.node_count()) {
        raise(Errc::LengthMismatch, "vector has " + std::to_string(v.size()) + " scores, taxonomy has " +
                                        std::to_string(t.node_count()) + " nodes");
    }
}

// Binary indicator of the label set plus all its ancestors.
inline LabelVector encode(const Taxonomy& t, const std::vector<std::string>& labels) {
    LabelVector v(static_cast<std::size_t>(t.node_count()), 0.0);
    for (const std::string& path : labels) {
        int i = t.index_of(path);
        for (; i >= 0; i = t.parent(i)) v[static_cast<std::size_t>(i)] = 1.0;
    }
    return v;
}

// Max-propagate child scores into parents so thresholding at any level yields
// an ancestor-closed set. Reverse pre-order visits children before parents.
inline LabelVector close_upward(const Taxonomy& t, const LabelVector& v) {
    check_length(t, v);
    LabelVector out = v;
    for (int i = t.node_count() - 1; i >= 0; --i) {
        int p = t.parent(i);
        if (p >= 0 && out[static_cast<std::size_t>(p)] < out[static_cast<std::size_t>(i)]) {
            out[static_cast<std::size_t>(p)] = out[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

// Paths whose closed score reaches the threshold; always ancestor-closed.
inline std::set<std::string> decode(const Taxonomy& t, const LabelVector& v, double threshold) {
    LabelVector closed = close_upward(t, v);
    std::set<std::string> out;
    for (int i = 0; i < t.node_count(); ++i) {
        if (closed[static_cast<std::size_t>(i)] >= threshold) out.insert(t.path(i));
    }
    return out;
}

}  // namespace taxfuse
