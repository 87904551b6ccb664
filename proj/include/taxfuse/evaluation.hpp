#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "taxfuse/encoding.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/taxonomy.hpp"

namespace taxfuse {

struct NodeCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;
};

struct ClasswiseReport {
    std::vector<std::string> paths;  // taxonomy index order
    std::vector<NodeCounts> counts;
    std::vector<double> f1;
    std::vector<long> support;  // gold positives
    double weighted_f1 = 0.0;   // support-weighted mean over support > 0 nodes
    long n_records = 0;
};

// For records gold-positive on one class: the fraction predicted positive on
// each other class. Multi-label, so fractions need not sum to one.
struct MislabelDistribution {
    std::string gold_node;
    long support = 0;
    std::map<std::string, double> fractions;  // every other node
};

struct EvalSummary {
    double weighted_f1 = 0.0;
    double subset_accuracy = 0.0;
    std::optional<double> binary_f1;
};

struct BinaryEval {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

namespace detail {

inline void check_eval_inputs(const Taxonomy& t, const std::vector<LabelVector>& gold,
                              const std::vector<LabelVector>& pred) {
    if (gold.empty() || gold.size() != pred.size()) {
        raise(Errc::LengthMismatch, "gold has " + std::to_string(gold.size()) + " vectors, predictions " +
                                        std::to_string(pred.size()));
    }
    for (const LabelVector& g : gold) {
        check_length(t, g);
        for (int i = 0; i < t.node_count(); ++i) {
            double v = g[static_cast<std::size_t>(i)];
            if (v != 0.0 && v != 1.0) raise(Errc::Precondition, "gold vectors must be binary");
            int p = t.parent(i);
            if (p >= 0 && g[static_cast<std::size_t>(p)] < v) {
                raise(Errc::Precondition, "gold vectors must be ancestor-closed");
            }
        }
    }
    for (const LabelVector& p : pred) check_length(t, p);
}

inline double f1_from_counts(long tp, long fp, long fn) {
    long denom = 2 * tp + fp + fn;
    if (denom == 0) return 0.0;  // support 0 and nothing predicted
    return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace detail

// Per-node confusion counts and F1 at `threshold`; predictions are closed
// upward before binarization. Zero-denominator F1 reports as 0.
inline ClasswiseReport classwise(const Taxonomy& t, const std::vector<LabelVector>& gold,
                                 const std::vector<LabelVector>& pred, double threshold) {
    detail::check_eval_inputs(t, gold, pred);
    const int n_nodes = t.node_count();
    ClasswiseReport rep;
    rep.n_records = static_cast<long>(gold.size());
    rep.counts.assign(static_cast<std::size_t>(n_nodes), NodeCounts{});
    for (std::size_t r = 0; r < gold.size(); ++r) {
        LabelVector closed = close_upward(t, pred[r]);
        for (int i = 0; i < n_nodes; ++i) {
            bool g = gold[r][static_cast<std::size_t>(i)] != 0.0;
            bool p = closed[static_cast<std::size_t>(i)] >= threshold;
            NodeCounts& c = rep.counts[static_cast<std::size_t>(i)];
            if (g && p) ++c.tp;
            else if (!g && p) ++c.fp;
            else if (g && !p) ++c.fn;
            else ++c.tn;
        }
    }
    rep.paths.reserve(static_cast<std::size_t>(n_nodes));
    rep.f1.reserve(static_cast<std::size_t>(n_nodes));
    rep.support.reserve(static_cast<std::size_t>(n_nodes));
    double weighted_sum = 0.0;
    long support_sum = 0;
    for (int i = 0; i < n_nodes; ++i) {
        const NodeCounts& c = rep.counts[static_cast<std::size_t>(i)];
        rep.paths.push_back(t.path(i));
        rep.f1.push_back(detail::f1_from_counts(c.tp, c.fp, c.fn));
        rep.support.push_back(c.tp + c.fn);
        if (rep.support.back() > 0) {
            weighted_sum += rep.f1.back() * static_cast<double>(rep.support.back());
            support_sum += rep.support.back();
        }
    }
    rep.weighted_f1 = support_sum > 0 ? weighted_sum / static_cast<double>(support_sum) : 0.0;
    return rep;
}

// Fraction of records whose entire binarized vector matches gold exactly.
inline double subset_accuracy(const Taxonomy& t, const std::vector<LabelVector>& gold,
                              const std::vector<LabelVector>& pred, double threshold) {
    detail::check_eval_inputs(t, gold, pred);
    long exact = 0;
    for (std::size_t r = 0; r < gold.size(); ++r) {
        LabelVector closed = close_upward(t, pred[r]);
        bool match = true;
        for (int i = 0; i < t.node_count() && match; ++i) {
            bool g = gold[r][static_cast<std::size_t>(i)] != 0.0;
            bool p = closed[static_cast<std::size_t>(i)] >= threshold;
            match = g == p;
        }
        if (match) ++exact;
    }
    return static_cast<double>(exact) / static_cast<double>(gold.size());
}

// Binary screening quality: predicted hateful iff the closed score of /Hate
// reaches the threshold.
inline BinaryEval binary_hate_eval(const Taxonomy& t, const std::vector<bool>& gold_hate,
                                   const std::vector<LabelVector>& pred, double threshold) {
    if (gold_hate.empty() || gold_hate.size() != pred.size()) {
        raise(Errc::LengthMismatch, "gold has " + std::to_string(gold_hate.size()) + " flags, predictions " +
                                        std::to_string(pred.size()));
    }
    const int hate = t.index_of("/Hate");
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t r = 0; r < pred.size(); ++r) {
        check_length(t, pred[r]);
        LabelVector closed = close_upward(t, pred[r]);
        bool p = closed[static_cast<std::size_t>(hate)] >= threshold;
        if (p && gold_hate[r]) ++tp;
        else if (p && !gold_hate[r]) ++fp;
        else if (!p && gold_hate[r]) ++fn;
    }
    BinaryEval e;
    e.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    e.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    e.f1 = detail::f1_from_counts(tp, fp, fn);
    return e;
}

inline MislabelDistribution mislabel_distribution(const Taxonomy& t, const std::vector<LabelVector>& gold,
                                                  const std::vector<LabelVector>& pred, double threshold,
                                                  const std::string& gold_node) {
    detail::check_eval_inputs(t, gold, pred);
    const int g_index = t.index_of(gold_node);
    MislabelDistribution dist;
    dist.gold_node = gold_node;
    std::vector<long> fired(static_cast<std::size_t>(t.node_count()), 0);
    for (std::size_t r = 0; r < gold.size(); ++r) {
        if (gold[r][static_cast<std::size_t>(g_index)] == 0.0) continue;
        ++dist.support;
        LabelVector closed = close_upward(t, pred[r]);
        for (int i = 0; i < t.node_count(); ++i) {
            if (closed[static_cast<std::size_t>(i)] >= threshold) ++fired[static_cast<std::size_t>(i)];
        }
    }
    if (dist.support == 0) raise(Errc::EmptySupport, "no gold-positive records for '" + gold_node + "'");
    for (int i = 0; i < t.node_count(); ++i) {
        if (i == g_index) continue;
        dist.fractions[t.path(i)] =
            static_cast<double>(fired[static_cast<std::size_t>(i)]) / static_cast<double>(dist.support);
    }
    return dist;
}

// Supported nodes whose F1 sits more than `margin` below the weighted mean,
// worst first (ties keep index order).
inline std::vector<std::string> outlier_classes(const ClasswiseReport& report, double margin) {
    if (!(margin > 0.0 && margin < 1.0)) raise(Errc::Precondition, "margin must be in (0,1)");
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < report.paths.size(); ++i) {
        if (report.support[i] > 0 && report.f1[i] < report.weighted_f1 - margin) picks.push_back(i);
    }
    std::stable_sort(picks.begin(), picks.end(),
                     [&](std::size_t a, std::size_t b) { return report.f1[a] < report.f1[b]; });
    std::vector<std::string> out;
    out.reserve(picks.size());
    for (std::size_t i : picks) out.push_back(report.paths[i]);
    return out;
}

// Tab-separated table, one node per row in index order.
inline std::string report_tsv(const ClasswiseReport& report) {
    std::string out = "path\tf1\tsupport\ttp\tfp\tfn\ttn\n";
    char line[512];
    for (std::size_t i = 0; i < report.paths.size(); ++i) {
        const NodeCounts& c = report.counts[i];
        std::snprintf(line, sizeof line, "%s\t%.6f\t%ld\t%ld\t%ld\t%ld\t%ld\n", report.paths[i].c_str(),
                      report.f1[i], report.support[i], c.tp, c.fp, c.fn, c.tn);
        out += line;
    }
    char tail[128];
    std::snprintf(tail, sizeof tail, "# weighted_f1\t%.6f\n# records\t%ld\n", report.weighted_f1,
                  report.n_records);
    out += tail;
    return out;
}

inline nlohmann::ordered_json report_json(const ClasswiseReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.paths.size(); ++i) {
        const NodeCounts& c = report.counts[i];
        rows.push_back({{"path", report.paths[i]},
                        {"f1", report.f1[i]},
                        {"support", report.support[i]},
                        {"tp", c.tp},
                        {"fp", c.fp},
                        {"fn", c.fn},
                        {"tn", c.tn}});
    }
    return nlohmann::ordered_json{
        {"weighted_f1", report.weighted_f1}, {"records", report.n_records}, {"classes", std::move(rows)}};
}

}  // namespace taxfuse
