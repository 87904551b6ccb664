#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "taxfuse/dataset.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/rng.hpp"

namespace taxfuse {

// Desk-scale stand-in for the restricted corpora. Every leaf class speaks
// through three signature tokens; texts are signatures plus filler noise, so
// a linear scorer can genuinely learn the taxonomy and every cross-dataset
// phenomenon below is planted, not accidental:
//   - dataset1 (vidgen-style labels) covers hate types plus one target slice;
//   - dataset2 (fanton-style labels) covers a different slice, with four
//     classes dataset1 never mentions, and no type annotations at all;
//   - Black and Non_white share two of their three tokens, and dataset2's
//     PEOPLE OF COLOR texts use Black's full signature: the classic sibling
//     confusion that the reparent directive later resolves;
//   - half of dataset2's texts contain type-signature tokens that its schema
//     cannot annotate (the missing-label phenomenon);
//   - the ETS mixes both vocabularies 50/50 hate/no-hate; the balancing pool
//     uses a disjoint calm vocabulary.
struct SyntheticSpec {
    int n1 = 1000;
    int n2 = 500;
    int n_pool = 1000;
    std::uint64_t seed = 7;
};

struct SyntheticCorpus {
    Dataset dataset1;  // unbound; labels are vidgen.map source strings
    Dataset dataset2;  // unbound; labels are fanton.map source strings
    Dataset pool;      // bound-style /No-hate labels, source "nonhate"
    std::vector<EtsRecord> ets;
};

namespace synth_detail {

struct ClassSpec {
    const char* label;     // source-schema label string
    const char* sig_base;  // signature token stem; nullptr = filler-only (OTHER)
    int weight;
};

inline const std::array<ClassSpec, 12>& d1_targets() {
    static const std::array<ClassSpec, 12> v = {{
        {"jews", "jews", 1},
        {"muslims", "muslims", 1},
        {"women", "women", 1},
        {"trans", "trans", 1},
        {"gay", "gay", 1},
        {"black", "black", 1},
        {"non.white", "nonwhite", 1},
        {"white", "white", 1},
        {"immigrants", "immigrants", 1},
        {"old.people", "oldpeople", 1},
        {"russian", "russian", 1},
        {"eastern.europe", "easterneurope", 1},
    }};
    return v;
}

inline const std::array<ClassSpec, 5>& d1_types() {
    static const std::array<ClassSpec, 5> v = {{
        {"derogation", "derogation", 1},
        {"animosity", "animosity", 1},
        {"threatening.language", "threatening", 1},
        {"dehumanization", "dehumanization", 1},
        {"support.for.hateful.entities", "hatesupport", 1},
    }};
    return v;
}

inline const std::array<ClassSpec, 10>& d2_targets() {
    static const std::array<ClassSpec, 10> v = {{
        {"JEWS", "jews", 9},
        {"MUSLIM", "muslims", 9},
        {"WOMEN", "women", 9},
        {"MIGRANTS", "immigrants", 9},
        {"PEOPLE OF COLOR", "poc-planted", 15},  // texts use Black's signature
        {"DISABLED", "disabled", 9},
        {"OVERWEIGHT", "overweight", 9},
        {"LGBT+", "lgbtq+", 9},
        {"ROMANI", "romani", 9},
        {"OTHER", nullptr, 4},
    }};
    return v;
}

// The Black/Non_white pair shares its first two tokens.
inline std::vector<std::string> signature(const std::string& base) {
    if (base == "black" || base == "poc-planted") return {"poc1sig", "poc2sig", "black3sig"};
    if (base == "nonwhite") return {"poc1sig", "poc2sig", "nonwhite3sig"};
    return {base + "1sig", base + "2sig", base + "3sig"};
}

inline std::string vocab_token(const char* stem, std::uint64_t k) {
    return std::string(stem) + std::to_string(k) + "tok";
}

inline void add_distinct(std::vector<std::string>& out, const char* stem, std::size_t count,
                         std::size_t vocab_size, Rng& rng) {
    std::set<std::uint64_t> used;
    while (used.size() < count) {
        std::uint64_t k = rng.bounded(vocab_size);
        if (used.insert(k).second) out.push_back(vocab_token(stem, k));
    }
}

inline std::string join_shuffled(std::vector<std::string> tokens, Rng& rng) {
    shuffle(tokens, rng);
    std::string text;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) text += ' ';
        text += tokens[i];
    }
    return text;
}

template <std::size_t N>
inline const ClassSpec& weighted_pick(const std::array<ClassSpec, N>& table, Rng& rng) {
    int total = 0;
    for (const ClassSpec& c : table) total += c.weight;
    int r = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(total)));
    for (const ClassSpec& c : table) {
        r -= c.weight;
        if (r < 0) return c;
    }
    return table.back();
}

inline std::string record_id(const char* prefix, int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%06d", prefix, i);
    return buf;
}

}  // namespace synth_detail

inline SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
    using namespace synth_detail;
    if (spec.n1 < 100 || spec.n2 < 100 || spec.n_pool < 100) {
        raise(Errc::Precondition, "synthetic corpus sizes must be >= 100");
    }
    SyntheticCorpus corpus;
    constexpr std::size_t kFillerVocab = 200;
    constexpr std::size_t kCalmVocab = 200;
    constexpr int kEtsSize = 400;

    {
        Rng rng = stage_rng(spec.seed, "synthetic/d1");
        std::set<std::string> seen;
        for (int i = 0; i < spec.n1; ++i) {
            const ClassSpec& target = weighted_pick(d1_targets(), rng);
            const ClassSpec& type = weighted_pick(d1_types(), rng);
            std::string text;
            do {
                std::vector<std::string> tokens = signature(target.sig_base);
                for (std::string& s : signature(type.sig_base)) tokens.push_back(std::move(s));
                add_distinct(tokens, "filler", 3, kFillerVocab, rng);
                text = join_shuffled(std::move(tokens), rng);
            } while (!seen.insert(text).second);
            Record r;
            r.id = record_id("d1", i);
            r.text = std::move(text);
            r.labels = {target.label, type.label};
            detail::sort_unique(r.labels);
            r.source = "vidgen";
            corpus.dataset1.records.push_back(std::move(r));
        }
    }

    {
        Rng rng = stage_rng(spec.seed, "synthetic/d2");
        std::set<std::string> seen;
        for (int i = 0; i < spec.n2; ++i) {
            const ClassSpec& target = weighted_pick(d2_targets(), rng);
            Record r;
            r.id = record_id("d2", i);
            r.source = "fanton";
            std::string text;
            if (target.sig_base == nullptr) {  // OTHER: noise only, dropped downstream
                do {
                    std::vector<std::string> tokens;
                    add_distinct(tokens, "filler", 6, kFillerVocab, rng);
                    text = join_shuffled(std::move(tokens), rng);
                } while (!seen.insert(text).second);
                r.labels = {target.label};
            } else {
                r.labels = {target.label};
                bool dual = rng.bounded(10) == 0 && std::string(target.label) != "PEOPLE OF COLOR";
                const ClassSpec* second = nullptr;
                if (dual) {
                    do {
                        second = &weighted_pick(d2_targets(), rng);
                    } while (second->sig_base == nullptr || second->label == std::string(target.label) ||
                             std::string(second->label) == "PEOPLE OF COLOR");
                    r.labels.push_back(second->label);
                }
                bool spiced = rng.bounded(2) == 0;  // unannotated type language
                const ClassSpec* type = spiced ? &d1_types()[rng.bounded(d1_types().size())] : nullptr;
                do {
                    std::vector<std::string> tokens = signature(target.sig_base);
                    if (second) {
                        for (std::string& s : signature(second->sig_base)) tokens.push_back(std::move(s));
                    }
                    if (type) {
                        std::vector<std::string> ts = signature(type->sig_base);
                        std::size_t skip = rng.bounded(3);
                        for (std::size_t k = 0; k < ts.size(); ++k) {
                            if (k != skip) tokens.push_back(std::move(ts[k]));
                        }
                    }
                    add_distinct(tokens, "filler", 3, kFillerVocab, rng);
                    text = join_shuffled(std::move(tokens), rng);
                } while (!seen.insert(text).second);
            }
            r.text = std::move(text);
            detail::sort_unique(r.labels);
            corpus.dataset2.records.push_back(std::move(r));
        }
    }

    {
        Rng rng = stage_rng(spec.seed, "synthetic/pool");
        std::set<std::string> seen;
        for (int i = 0; i < spec.n_pool; ++i) {
            std::string text;
            do {
                std::vector<std::string> tokens;
                add_distinct(tokens, "calm", 5, kCalmVocab, rng);
                text = join_shuffled(std::move(tokens), rng);
            } while (!seen.insert(text).second);
            Record r;
            r.id = record_id("pool", i);
            r.text = std::move(text);
            r.labels = {"/No-hate"};
            r.source = "nonhate";
            corpus.pool.records.push_back(std::move(r));
        }
    }

    {
        Rng rng = stage_rng(spec.seed, "synthetic/ets");
        static const std::array<const char*, 4> b_only = {"disabled", "overweight", "lgbtq+", "romani"};
        std::set<std::string> seen;
        for (int i = 0; i < kEtsSize; ++i) {
            EtsRecord r;
            r.id = record_id("ets", i);
            r.hate = i % 2 == 0;
            std::string text;
            do {
                std::vector<std::string> tokens;
                if (r.hate) {
                    // Alternate between the two source vocabularies, with a
                    // couple of calm words mixed in.
                    if ((i / 2) % 2 == 0) {
                        tokens = signature(weighted_pick(d1_targets(), rng).sig_base);
                    } else {
                        tokens = signature(b_only[rng.bounded(b_only.size())]);
                    }
                    add_distinct(tokens, "filler", 1, kFillerVocab, rng);
                    add_distinct(tokens, "calm", 2, kCalmVocab, rng);
                } else {
                    add_distinct(tokens, "calm", 5, kCalmVocab, rng);
                }
                text = join_shuffled(std::move(tokens), rng);
            } while (!seen.insert(text).second);
            r.text = std::move(text);
            corpus.ets.push_back(std::move(r));
        }
    }
    return corpus;
}

// File layout consumed by the cycle configs.
struct SyntheticFiles {
    std::string dataset1 = "dataset1.jsonl";
    std::string dataset2 = "dataset2.jsonl";
    std::string pool = "nonhate_pool.jsonl";
    std::string ets = "ets.jsonl";
};

inline void write_synthetic(const SyntheticCorpus& corpus, const std::string& dir,
                            const SyntheticFiles& names = {}) {
    save_jsonl(corpus.dataset1, dir + "/" + names.dataset1);
    save_jsonl(corpus.dataset2, dir + "/" + names.dataset2);
    save_jsonl(corpus.pool, dir + "/" + names.pool);
    save_ets(corpus.ets, dir + "/" + names.ets);
}

}  // namespace taxfuse
