#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "taxfuse/classifier.hpp"
#include "taxfuse/dataset.hpp"
#include "taxfuse/encoding.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/evaluation.hpp"
#include "taxfuse/fingerprint.hpp"
#include "taxfuse/mapping.hpp"
#include "taxfuse/model_io.hpp"
#include "taxfuse/rng.hpp"
#include "taxfuse/taxonomy.hpp"

namespace taxfuse {

// One end-to-end run: Cycle-1 trains on dataset1 under the base taxonomy,
// diagnosis on dataset2 proposes taxonomy repairs, Cycle-1-A retrains from
// scratch under the edited taxonomy, Cycle-2 fuses human labels with model
// predictions on dataset2 and fine-tunes the Cycle-1-A model on them.
struct CycleConfig {
    std::string taxonomy_path;
    std::string dataset1_path;
    std::string dataset2_path;
    std::string nonhate_pool_path;
    std::string ets_path;
    std::string mapping1_path;
    std::string mapping2_path;
    std::string directives_path;  // optional; empty = no taxonomy edits
    TrainConfig train1;
    TrainConfig train2;
    double inject_fraction = 0.30;
    double holdout_fraction = 0.10;
    std::uint64_t seed = 7;
    std::uint32_t feature_dim = kDefaultFeatureDim;
};

inline CycleConfig default_cycle_config() {
    CycleConfig cfg;
    cfg.train1 = TrainConfig{};  // from-scratch defaults
    cfg.train2 = TrainConfig{};
    cfg.train2.learning_rate = 8.0;
    cfg.train2.l2 = 2e-4;  // elevated regularization for the fine-tune
    return cfg;
}

namespace pipe_detail {

inline TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base) {
    if (j.contains("epochs")) base.epochs = j.at("epochs").get<int>();
    if (j.contains("batch_size")) base.batch_size = j.at("batch_size").get<int>();
    if (j.contains("learning_rate")) base.learning_rate = j.at("learning_rate").get<double>();
    if (j.contains("l2")) base.l2 = j.at("l2").get<double>();
    if (j.contains("eval_every")) base.eval_every = j.at("eval_every").get<int>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threshold")) base.threshold = j.at("threshold").get<double>();
    return base;
}

inline nlohmann::json train_config_json(const TrainConfig& c) {
    return {{"epochs", c.epochs},         {"batch_size", c.batch_size},
            {"learning_rate", c.learning_rate}, {"l2", c.l2},
            {"eval_every", c.eval_every}, {"seed", c.seed},
            {"threshold", c.threshold}};
}

inline std::string resolve_path(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return fp.lexically_normal().string();
    return (base / fp).lexically_normal().string();
}

}  // namespace pipe_detail

// Structured config file mirroring the CycleConfig fields; relative paths are
// resolved against the config file's directory.
inline CycleConfig parse_cycle_config(const std::string& text, const std::string& base_dir) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(Errc::ParseError, "config is not a JSON object");
    CycleConfig cfg = default_cycle_config();
    std::filesystem::path base(base_dir);
    auto path_field = [&](const char* key, bool required) {
        if (!j.contains(key)) {
            if (required) raise(Errc::ParseError, std::string("config missing '") + key + "'");
            return std::string();
        }
        return pipe_detail::resolve_path(base, j.at(key).get<std::string>());
    };
    cfg.taxonomy_path = path_field("taxonomy_path", true);
    cfg.dataset1_path = path_field("dataset1_path", true);
    cfg.dataset2_path = path_field("dataset2_path", true);
    cfg.nonhate_pool_path = path_field("nonhate_pool_path", true);
    cfg.ets_path = path_field("ets_path", true);
    cfg.mapping1_path = path_field("mapping1_path", true);
    cfg.mapping2_path = path_field("mapping2_path", true);
    cfg.directives_path = path_field("directives_path", false);
    if (j.contains("train1")) cfg.train1 = pipe_detail::train_config_from_json(j.at("train1"), cfg.train1);
    if (j.contains("train2")) cfg.train2 = pipe_detail::train_config_from_json(j.at("train2"), cfg.train2);
    if (j.contains("inject_fraction")) cfg.inject_fraction = j.at("inject_fraction").get<double>();
    if (j.contains("holdout_fraction")) cfg.holdout_fraction = j.at("holdout_fraction").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("feature_dim")) cfg.feature_dim = j.at("feature_dim").get<std::uint32_t>();
    if (!(cfg.inject_fraction > 0.0 && cfg.inject_fraction < 1.0)) {
        raise(Errc::Precondition, "inject_fraction must be in (0,1)");
    }
    if (!(cfg.holdout_fraction > 0.0 && cfg.holdout_fraction < 1.0)) {
        raise(Errc::Precondition, "holdout_fraction must be in (0,1)");
    }
    return cfg;
}

inline CycleConfig load_cycle_config(const std::string& path) {
    return parse_cycle_config(read_file(path), std::filesystem::path(path).parent_path().string());
}

// Canonical JSON of the resolved config; its SHA-256 stamps every artifact so
// results from different configurations cannot be compared by accident.
inline std::string config_hash(const CycleConfig& cfg) {
    nlohmann::json j{{"taxonomy_path", cfg.taxonomy_path},
                     {"dataset1_path", cfg.dataset1_path},
                     {"dataset2_path", cfg.dataset2_path},
                     {"nonhate_pool_path", cfg.nonhate_pool_path},
                     {"ets_path", cfg.ets_path},
                     {"mapping1_path", cfg.mapping1_path},
                     {"mapping2_path", cfg.mapping2_path},
                     {"directives_path", cfg.directives_path},
                     {"train1", pipe_detail::train_config_json(cfg.train1)},
                     {"train2", pipe_detail::train_config_json(cfg.train2)},
                     {"inject_fraction", cfg.inject_fraction},
                     {"holdout_fraction", cfg.holdout_fraction},
                     {"seed", cfg.seed},
                     {"feature_dim", cfg.feature_dim}};
    return sha256_hex(j.dump());
}

// Everything read from disk, loaded once and shared across cycles.
struct PipelineInputs {
    Taxonomy base_taxonomy;
    std::vector<EditDirective> directives;
    LabelMapping mapping1;
    LabelMapping mapping2;
    Dataset dataset1_raw;  // source-schema labels
    Dataset dataset2_raw;
    Dataset pool_raw;      // /No-hate path labels, not yet bound
    std::vector<EtsRecord> ets;
};

inline PipelineInputs load_inputs(const CycleConfig& cfg) {
    PipelineInputs in{.base_taxonomy = Taxonomy::parse(read_file(cfg.taxonomy_path)),
                      .directives = {},
                      .mapping1 = LabelMapping::parse(read_file(cfg.mapping1_path)),
                      .mapping2 = LabelMapping::parse(read_file(cfg.mapping2_path)),
                      .dataset1_raw = load_jsonl(cfg.dataset1_path),
                      .dataset2_raw = load_jsonl(cfg.dataset2_path),
                      .pool_raw = load_jsonl(cfg.nonhate_pool_path),
                      .ets = load_ets(cfg.ets_path)};
    if (!cfg.directives_path.empty()) {
        in.directives = parse_directives(read_file(cfg.directives_path));
    }
    return in;
}

struct CycleArtifacts {
    std::string cycle_name;
    std::string config_hash;
    Taxonomy taxonomy;                  // taxonomy in force for this cycle
    std::vector<PathRewrite> rewrites;  // directive-induced renames (cycle1a on)
    ClassifierModel model;
    ClasswiseReport holdout_classwise;
    EvalSummary holdout_summary;
    BinaryEval ets_eval;
    Dataset train_set;
    Dataset holdout;
    std::optional<Dataset> fused_dataset;  // cycle2 only
};

namespace pipe_detail {

inline Dataset bind(const Taxonomy& t, Dataset d) {
    for (const Record& r : d.records) validate_record_labels(t, r);
    d.taxonomy_fingerprint = t.fingerprint();
    return d;
}

inline std::vector<LabelVector> predict_all(const ClassifierModel& m, const Taxonomy& t,
                                            const Dataset& d) {
    std::vector<LabelVector> preds;
    preds.reserve(d.records.size());
    for (const Record& r : d.records) preds.push_back(predict(m, t, r.text));
    return preds;
}

inline std::vector<LabelVector> encode_all(const Taxonomy& t, const Dataset& d) {
    std::vector<LabelVector> gold;
    gold.reserve(d.records.size());
    for (const Record& r : d.records) gold.push_back(encode(t, r.labels));
    return gold;
}

inline BinaryEval eval_ets(const ClassifierModel& m, const Taxonomy& t,
                           const std::vector<EtsRecord>& ets, double threshold) {
    std::vector<LabelVector> preds;
    std::vector<bool> gold;
    preds.reserve(ets.size());
    gold.reserve(ets.size());
    for (const EtsRecord& r : ets) {
        preds.push_back(predict(m, t, r.text));
        gold.push_back(r.hate);
    }
    return binary_hate_eval(t, gold, preds, threshold);
}

// The dataset1 recipe shared by Cycle-1 and Cycle-1-A: map, clean, balance,
// split, train from scratch, evaluate. Both cycles use the same seed-derived
// streams, so an empty directive list reproduces Cycle-1 bit for bit.
inline CycleArtifacts run_dataset1_cycle(const CycleConfig& cfg, const PipelineInputs& in,
                                         const std::string& name, Taxonomy taxonomy,
                                         std::vector<PathRewrite> rewrites, const TrainLog& log) {
    LabelMapping mapping = in.mapping1.rebound(rewrites);
    auto [mapped, report] = apply_mapping(mapping, taxonomy, in.dataset1_raw);
    Dataset d1 = clean(mapped);
    if (d1.records.empty()) raise(Errc::EmptyDataset, "dataset1 is empty after mapping and cleaning");
    Dataset pool = clean(bind(taxonomy, in.pool_raw));

    Rng inject_rng = stage_rng(cfg.seed, "inject1");
    Dataset mixed = inject_nonhate(d1, pool, cfg.inject_fraction, inject_rng);
    Rng split_rng = stage_rng(cfg.seed, "split1");
    auto [train_set, holdout] = split_holdout(mixed, cfg.holdout_fraction, split_rng);

    TrainConfig tc = cfg.train1;
    if (tc.seed == 0) tc.seed = cfg.seed ^ fnv1a64("train1");
    ClassifierModel model = train(taxonomy, train_set, tc, std::nullopt, cfg.feature_dim, log);

    CycleArtifacts art;
    art.cycle_name = name;
    art.config_hash = config_hash(cfg);
    art.taxonomy = std::move(taxonomy);
    art.rewrites = std::move(rewrites);
    std::vector<LabelVector> preds = predict_all(model, art.taxonomy, holdout);
    std::vector<LabelVector> gold = encode_all(art.taxonomy, holdout);
    art.holdout_classwise = classwise(art.taxonomy, gold, preds, tc.threshold);
    art.holdout_summary.weighted_f1 = art.holdout_classwise.weighted_f1;
    art.holdout_summary.subset_accuracy = subset_accuracy(art.taxonomy, gold, preds, tc.threshold);
    art.ets_eval = eval_ets(model, art.taxonomy, in.ets, tc.threshold);
    art.holdout_summary.binary_f1 = art.ets_eval.f1;
    art.model = std::move(model);
    art.train_set = std::move(train_set);
    art.holdout = std::move(holdout);
    return art;
}

}  // namespace pipe_detail

inline CycleArtifacts run_cycle1(const CycleConfig& cfg, const PipelineInputs& in,
                                 const TrainLog& log = nullptr) {
    return pipe_detail::run_dataset1_cycle(cfg, in, "cycle1", in.base_taxonomy, {}, log);
}

inline CycleArtifacts run_cycle1a(const CycleConfig& cfg, const PipelineInputs& in,
                                  const TrainLog& log = nullptr) {
    Taxonomy::ApplyResult applied = in.base_taxonomy.apply_directives_traced(in.directives);
    return pipe_detail::run_dataset1_cycle(cfg, in, "cycle1a", std::move(applied.taxonomy),
                                           std::move(applied.rewrites), log);
}

struct MissingLabel {
    std::string path;
    long predicted_support = 0;  // records predicted positive despite gold support 0
};

// Cross-dataset diagnosis: where the trained model and the second dataset's
// re-annotated gold disagree, and in which of the three characteristic ways
// (outlier classes, sibling confusion, labels missing from the source schema).
struct DiagnosisBundle {
    std::string config_hash;
    std::string taxonomy_fingerprint;
    long n_records = 0;
    ClasswiseReport classwise;
    std::vector<std::string> outliers;
    std::vector<MislabelDistribution> mislabel;  // one per outlier, same order
    std::vector<MissingLabel> missing_labels;
};

inline DiagnosisBundle diagnose_cross(const CycleConfig& cfg, const PipelineInputs& in,
                                      const CycleArtifacts& artifacts, double margin = 0.3) {
    LabelMapping mapping = in.mapping2.rebound(artifacts.rewrites);
    auto [mapped, report] = apply_mapping(mapping, artifacts.taxonomy, in.dataset2_raw);
    Dataset d2 = clean(mapped);
    DiagnosisBundle bundle;
    bundle.config_hash = config_hash(cfg);
    bundle.taxonomy_fingerprint = artifacts.taxonomy.fingerprint();
    bundle.n_records = static_cast<long>(d2.records.size());
    if (d2.records.empty()) return bundle;

    double threshold = cfg.train1.threshold;
    std::vector<LabelVector> preds = pipe_detail::predict_all(artifacts.model, artifacts.taxonomy, d2);
    std::vector<LabelVector> gold = pipe_detail::encode_all(artifacts.taxonomy, d2);
    bundle.classwise = classwise(artifacts.taxonomy, gold, preds, threshold);
    bundle.outliers = outlier_classes(bundle.classwise, margin);
    for (const std::string& node : bundle.outliers) {
        bundle.mislabel.push_back(mislabel_distribution(artifacts.taxonomy, gold, preds, threshold, node));
    }
    std::vector<long> fired(static_cast<std::size_t>(artifacts.taxonomy.node_count()), 0);
    for (const LabelVector& p : preds) {
        LabelVector closed = close_upward(artifacts.taxonomy, p);
        for (int i = 0; i < artifacts.taxonomy.node_count(); ++i) {
            if (closed[static_cast<std::size_t>(i)] >= threshold) ++fired[static_cast<std::size_t>(i)];
        }
    }
    for (std::size_t i = 0; i < bundle.classwise.support.size(); ++i) {
        if (bundle.classwise.support[i] == 0 && fired[i] > 0) {
            bundle.missing_labels.push_back(MissingLabel{bundle.classwise.paths[i], fired[i]});
        }
    }
    return bundle;
}

// Re-annotate dataset2 with the Cycle-1-A model, fuse with the human labels
// (human positives win), balance, split, and fine-tune the warm-started model.
inline CycleArtifacts run_cycle2(const CycleConfig& cfg, const PipelineInputs& in,
                                 const CycleArtifacts& artifacts_1a, const TrainLog& log = nullptr) {
    const Taxonomy& taxonomy = artifacts_1a.taxonomy;
    LabelMapping mapping = in.mapping2.rebound(artifacts_1a.rewrites);
    auto [mapped, report] = apply_mapping(mapping, taxonomy, in.dataset2_raw);
    Dataset d2 = clean(mapped);
    if (d2.records.empty()) raise(Errc::EmptyDataset, "dataset2 is empty after mapping and cleaning");

    std::vector<LabelVector> preds = pipe_detail::predict_all(artifacts_1a.model, taxonomy, d2);
    Dataset fused = fuse_annotations(taxonomy, d2, preds);
    Dataset pool = clean(pipe_detail::bind(taxonomy, in.pool_raw));

    Rng inject_rng = stage_rng(cfg.seed, "inject2");
    Dataset mixed = inject_nonhate(fused, pool, cfg.inject_fraction, inject_rng);
    Rng split_rng = stage_rng(cfg.seed, "split2");
    auto [train_set, holdout] = split_holdout(mixed, cfg.holdout_fraction, split_rng);

    TrainConfig tc = cfg.train2;
    if (tc.seed == 0) tc.seed = cfg.seed ^ fnv1a64("train2");
    ClassifierModel model = train(taxonomy, train_set, tc, artifacts_1a.model, cfg.feature_dim, log);

    CycleArtifacts art;
    art.cycle_name = "cycle2";
    art.config_hash = config_hash(cfg);
    art.taxonomy = taxonomy;
    art.rewrites = artifacts_1a.rewrites;
    std::vector<LabelVector> hold_preds = pipe_detail::predict_all(model, taxonomy, holdout);
    std::vector<LabelVector> gold = pipe_detail::encode_all(taxonomy, holdout);
    art.holdout_classwise = classwise(taxonomy, gold, hold_preds, tc.threshold);
    art.holdout_summary.weighted_f1 = art.holdout_classwise.weighted_f1;
    art.holdout_summary.subset_accuracy = subset_accuracy(taxonomy, gold, hold_preds, tc.threshold);
    art.ets_eval = pipe_detail::eval_ets(model, taxonomy, in.ets, tc.threshold);
    art.holdout_summary.binary_f1 = art.ets_eval.f1;
    art.model = std::move(model);
    art.train_set = std::move(train_set);
    art.holdout = std::move(holdout);
    art.fused_dataset = std::move(fused);
    return art;
}

// Cross-cycle roll-up: one row per cycle in execution order plus deltas
// between consecutive rows. Mixing artifacts from different configs refuses.
struct CycleSummary {
    std::string cycle;
    std::string config_hash;
    std::string taxonomy_fingerprint;
    double holdout_weighted_f1 = 0.0;
    double holdout_subset_accuracy = 0.0;
    BinaryEval ets;
};

inline CycleSummary summarize(const CycleArtifacts& art) {
    return CycleSummary{art.cycle_name,
                        art.config_hash,
                        art.taxonomy.fingerprint(),
                        art.holdout_summary.weighted_f1,
                        art.holdout_summary.subset_accuracy,
                        art.ets_eval};
}

struct ComparisonRow {
    std::string cycle;
    double ets_f1 = 0.0;
    double holdout_weighted_f1 = 0.0;
    double holdout_subset_accuracy = 0.0;
    double delta_ets_f1 = 0.0;  // vs previous row; 0 for the first
    double delta_weighted_f1 = 0.0;
    double delta_subset_accuracy = 0.0;
};

struct ComparisonReport {
    std::string config_hash;
    std::vector<ComparisonRow> rows;
};

inline ComparisonReport compare_cycles(const std::vector<CycleSummary>& summaries) {
    if (summaries.empty()) raise(Errc::Precondition, "nothing to compare");
    ComparisonReport rep;
    rep.config_hash = summaries.front().config_hash;
    for (const CycleSummary& s : summaries) {
        if (s.config_hash != rep.config_hash) {
            raise(Errc::StampMismatch, "summary for '" + s.cycle + "' carries a different config hash");
        }
        ComparisonRow row;
        row.cycle = s.cycle;
        row.ets_f1 = s.ets.f1;
        row.holdout_weighted_f1 = s.holdout_weighted_f1;
        row.holdout_subset_accuracy = s.holdout_subset_accuracy;
        if (!rep.rows.empty()) {
            const ComparisonRow& prev = rep.rows.back();
            row.delta_ets_f1 = row.ets_f1 - prev.ets_f1;
            row.delta_weighted_f1 = row.holdout_weighted_f1 - prev.holdout_weighted_f1;
            row.delta_subset_accuracy = row.holdout_subset_accuracy - prev.holdout_subset_accuracy;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---- artifact files -------------------------------------------------------

inline nlohmann::ordered_json summary_json(const CycleSummary& s) {
    return nlohmann::ordered_json{
        {"cycle", s.cycle},
        {"config_hash", s.config_hash},
        {"taxonomy_fingerprint", s.taxonomy_fingerprint},
        {"holdout", {{"weighted_f1", s.holdout_weighted_f1}, {"subset_accuracy", s.holdout_subset_accuracy}}},
        {"ets", {{"f1", s.ets.f1}, {"precision", s.ets.precision}, {"recall", s.ets.recall}}}};
}

inline CycleSummary parse_summary(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(Errc::ParseError, "summary is not a JSON object");
    try {
        CycleSummary s;
        s.cycle = j.at("cycle").get<std::string>();
        s.config_hash = j.at("config_hash").get<std::string>();
        s.taxonomy_fingerprint = j.at("taxonomy_fingerprint").get<std::string>();
        s.holdout_weighted_f1 = j.at("holdout").at("weighted_f1").get<double>();
        s.holdout_subset_accuracy = j.at("holdout").at("subset_accuracy").get<double>();
        s.ets.f1 = j.at("ets").at("f1").get<double>();
        s.ets.precision = j.at("ets").at("precision").get<double>();
        s.ets.recall = j.at("ets").at("recall").get<double>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::ParseError, std::string("summary: ") + e.what());
    }
}

// Writes model.bin, summary.json, classwise.tsv, holdout.jsonl, taxonomy.tax
// (and fused.jsonl for Cycle-2) under `dir`. Text artifacts open with a
// config-hash stamp line.
inline void write_cycle_artifacts(const CycleArtifacts& art, const std::string& dir) {
    std::filesystem::create_directories(dir);
    save_model(art.model, dir + "/model.bin");
    CycleSummary s = summarize(art);
    nlohmann::ordered_json j = summary_json(s);
    j["model_file"] = "model.bin";
    j["model_sha256"] = sha256_hex(serialize_model(art.model));
    write_file(dir + "/summary.json", j.dump(2) + "\n");
    write_file(dir + "/classwise.tsv",
               "# config_hash\t" + art.config_hash + "\n" + report_tsv(art.holdout_classwise));
    save_jsonl(art.holdout, dir + "/holdout.jsonl");
    write_file(dir + "/taxonomy.tax", art.taxonomy.serialize());
    if (art.fused_dataset) save_jsonl(*art.fused_dataset, dir + "/fused.jsonl");
}

inline nlohmann::ordered_json diagnosis_json(const DiagnosisBundle& b) {
    nlohmann::ordered_json mislabel = nlohmann::ordered_json::array();
    for (const MislabelDistribution& d : b.mislabel) {
        nlohmann::ordered_json fractions = nlohmann::ordered_json::object();
        for (const auto& [path, fraction] : d.fractions) {
            if (fraction > 0.0) fractions[path] = fraction;
        }
        mislabel.push_back({{"gold_node", d.gold_node}, {"support", d.support}, {"fractions", fractions}});
    }
    nlohmann::ordered_json missing = nlohmann::ordered_json::array();
    for (const MissingLabel& m : b.missing_labels) {
        missing.push_back({{"path", m.path}, {"predicted_support", m.predicted_support}});
    }
    return nlohmann::ordered_json{{"config_hash", b.config_hash},
                                  {"taxonomy_fingerprint", b.taxonomy_fingerprint},
                                  {"records", b.n_records},
                                  {"outliers", b.outliers},
                                  {"mislabel", std::move(mislabel)},
                                  {"missing_labels", std::move(missing)}};
}

inline void write_diagnosis(const DiagnosisBundle& b, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir + "/diagnosis.json", diagnosis_json(b).dump(2) + "\n");
    write_file(dir + "/classwise.tsv", "# config_hash\t" + b.config_hash + "\n" + report_tsv(b.classwise));
}

inline std::string comparison_tsv(const ComparisonReport& rep) {
    std::string out = "# config_hash\t" + rep.config_hash + "\n";
    out += "cycle\tets_f1\tholdout_weighted_f1\tsubset_accuracy\td_ets_f1\td_weighted_f1\td_subset_accuracy\n";
    char line[256];
    for (const ComparisonRow& r : rep.rows) {
        std::snprintf(line, sizeof line, "%s\t%.6f\t%.6f\t%.6f\t%+.6f\t%+.6f\t%+.6f\n", r.cycle.c_str(),
                      r.ets_f1, r.holdout_weighted_f1, r.holdout_subset_accuracy, r.delta_ets_f1,
                      r.delta_weighted_f1, r.delta_subset_accuracy);
        out += line;
    }
    return out;
}

}  // namespace taxfuse
