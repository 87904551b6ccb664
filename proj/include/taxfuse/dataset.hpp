#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "taxfuse/encoding.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/rng.hpp"
#include "taxfuse/taxonomy.hpp"

namespace taxfuse {

using ordered_json = nlohmann::ordered_json;

// Source tag that marks records from the non-hate balancing pool; empty-label
// records from any other source are treated as unusable annotations by clean().
inline constexpr std::string_view kNonHateSource = "nonhate";

struct Record {
    std::string id;
    std::string text;                                   // raw, no preprocessing
    std::vector<std::string> labels;                    // sorted, unique
    std::optional<std::map<std::string, double>> soft;  // path -> target in [0,1]
    std::string source;
};

struct Dataset {
    std::vector<Record> records;
    std::string taxonomy_fingerprint;  // empty while labels are still source-schema strings
};

namespace detail {

// Trims ASCII whitespace plus the common Unicode space code points
// (NBSP, U+2000..U+200A, LS/PS, U+205F, U+3000, BOM) in their UTF-8 forms.
inline std::string_view trim_whitespace(std::string_view s) {
    auto space_len = [&](std::size_t i) -> std::size_t {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == ' ' || (c >= '\t' && c <= '\r')) return 1;
        if (c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xA0) return 2;
        if (c == 0xE2 && i + 2 < s.size()) {
            unsigned char b = static_cast<unsigned char>(s[i + 1]);
            unsigned char d = static_cast<unsigned char>(s[i + 2]);
            if (b == 0x80 && ((d >= 0x80 && d <= 0x8A) || d == 0xA8 || d == 0xA9)) return 3;
            if (b == 0x81 && d == 0x9F) return 3;
        }
        if (c == 0xE3 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
            static_cast<unsigned char>(s[i + 2]) == 0x80) {
            return 3;
        }
        if (c == 0xEF && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xBB &&
            static_cast<unsigned char>(s[i + 2]) == 0xBF) {
            return 3;
        }
        return 0;
    };
    std::size_t begin = 0;
    while (begin < s.size()) {
        std::size_t n = space_len(begin);
        if (n == 0) break;
        begin += n;
    }
    // Scan forward for the last non-space position; multi-byte spaces make a
    // reverse scan unreliable.
    std::size_t end = begin;
    std::size_t i = begin;
    while (i < s.size()) {
        std::size_t n = space_len(i);
        if (n == 0) {
            i += 1;
            end = i;
        } else {
            i += n;
        }
    }
    return s.substr(begin, end - begin);
}

inline void sort_unique(std::vector<std::string>& labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
}

}  // namespace detail

inline void validate_record_labels(const Taxonomy& t, const Record& r) {
    for (const std::string& p : r.labels) t.index_of(p);
    if (r.soft) {
        for (const auto& [path, score] : *r.soft) {
            t.index_of(path);
            if (!(score >= 0.0 && score <= 1.0)) {
                raise(Errc::ParseError, "record '" + r.id + "': soft score out of [0,1]");
            }
        }
    }
}

// JSON-Lines record schema: {"id", "text", "labels", "soft"?, "source"?}.
// Passing a taxonomy binds the dataset: label paths are validated and the
// taxonomy fingerprint is stamped.
inline Dataset parse_jsonl(std::string_view text, const Taxonomy* t = nullptr) {
    Dataset d;
    if (t) d.taxonomy_fingerprint = t->fingerprint();
    std::set<std::string> seen_ids;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (detail::trim_whitespace(line).empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        auto fail = [&](const std::string& why) {
            raise(Errc::ParseError, "line " + std::to_string(line_no) + ": " + why);
        };
        if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
        if (!j.contains("id") || !j["id"].is_string()) fail("missing string field 'id'");
        if (!j.contains("text") || !j["text"].is_string()) fail("missing string field 'text'");
        if (!j.contains("labels") || !j["labels"].is_array()) fail("missing array field 'labels'");
        Record r;
        r.id = j["id"].get<std::string>();
        r.text = j["text"].get<std::string>();
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) fail("labels must be strings");
            r.labels.push_back(l.get<std::string>());
        }
        detail::sort_unique(r.labels);
        if (j.contains("soft")) {
            if (!j["soft"].is_object()) fail("'soft' must be an object");
            std::map<std::string, double> soft;
            for (const auto& [k, v] : j["soft"].items()) {
                if (!v.is_number()) fail("'soft' values must be numbers");
                soft[k] = v.get<double>();
            }
            r.soft = std::move(soft);
        }
        if (j.contains("source")) {
            if (!j["source"].is_string()) fail("'source' must be a string");
            r.source = j["source"].get<std::string>();
        }
        if (!seen_ids.insert(r.id).second) fail("duplicate record id '" + r.id + "'");
        if (t) validate_record_labels(*t, r);
        d.records.push_back(std::move(r));
    }
    return d;
}

inline std::string to_jsonl(const Dataset& d) {
    std::string out;
    for (const Record& r : d.records) {
        ordered_json j;
        j["id"] = r.id;
        j["text"] = r.text;
        j["labels"] = r.labels;
        if (r.soft) {
            ordered_json s = ordered_json::object();
            for (const auto& [path, score] : *r.soft) s[path] = score;
            j["soft"] = std::move(s);
        }
        j["source"] = r.source;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoError, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) raise(Errc::IoError, "short write to '" + path + "'");
}

inline Dataset load_jsonl(const std::string& path, const Taxonomy* t = nullptr) {
    return parse_jsonl(read_file(path), t);
}

inline void save_jsonl(const Dataset& d, const std::string& path) { write_file(path, to_jsonl(d)); }

// Drops whitespace-only texts, exact duplicate texts (first kept, compared
// after whitespace trimming), and label-less records from hate datasets.
// Pool records (source == "nonhate") may legitimately carry no hate labels.
inline Dataset clean(const Dataset& d) {
    Dataset out;
    out.taxonomy_fingerprint = d.taxonomy_fingerprint;
    std::set<std::string, std::less<>> seen_texts;
    for (const Record& r : d.records) {
        std::string_view trimmed = detail::trim_whitespace(r.text);
        if (trimmed.empty()) continue;
        if (!seen_texts.insert(std::string(trimmed)).second) continue;
        if (r.labels.empty() && r.source != kNonHateSource) continue;
        out.records.push_back(r);
    }
    return out;
}

// Adds pool records so they make up `fraction` of the result, then shuffles.
// n_add = round(fraction / (1 - fraction) * |d|), sampled without replacement.
inline Dataset inject_nonhate(const Dataset& d, const Dataset& pool, double fraction, Rng& rng) {
    if (!(fraction > 0.0 && fraction < 1.0)) raise(Errc::Precondition, "inject fraction must be in (0,1)");
    if (!d.taxonomy_fingerprint.empty() && !pool.taxonomy_fingerprint.empty() &&
        d.taxonomy_fingerprint != pool.taxonomy_fingerprint) {
        raise(Errc::FingerprintMismatch, "dataset and pool are bound to different taxonomies");
    }
    for (const Record& r : pool.records) {
        if (r.labels.size() != 1 || r.labels[0] != "/No-hate") {
            raise(Errc::Precondition, "pool record '" + r.id + "' must carry exactly the /No-hate label");
        }
    }
    auto n_add = static_cast<std::size_t>(
        std::llround(fraction / (1.0 - fraction) * static_cast<double>(d.records.size())));
    if (pool.records.size() < n_add) {
        raise(Errc::PoolTooSmall, "need " + std::to_string(n_add) + " pool records, have " +
                                      std::to_string(pool.records.size()));
    }
    // Partial Fisher-Yates over pool indices; first n_add slots are the sample.
    std::vector<std::size_t> idx(pool.records.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < n_add; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.bounded(idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
    Dataset out;
    out.taxonomy_fingerprint =
        d.taxonomy_fingerprint.empty() ? pool.taxonomy_fingerprint : d.taxonomy_fingerprint;
    out.records = d.records;
    std::set<std::string> ids;
    for (const Record& r : out.records) ids.insert(r.id);
    for (std::size_t i = 0; i < n_add; ++i) {
        const Record& r = pool.records[idx[i]];
        if (!ids.insert(r.id).second) {
            raise(Errc::Precondition, "pool record id '" + r.id + "' collides with the dataset");
        }
        out.records.push_back(r);
    }
    shuffle(out.records, rng);
    return out;
}

// Shuffle, then carve the last ceil(fraction * n) records off as the holdout.
inline std::pair<Dataset, Dataset> split_holdout(const Dataset& d, double fraction, Rng& rng) {
    if (!(fraction > 0.0 && fraction < 1.0)) raise(Errc::Precondition, "holdout fraction must be in (0,1)");
    std::vector<Record> shuffled = d.records;
    shuffle(shuffled, rng);
    auto n_hold = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(shuffled.size())));
    Dataset train{.records = {}, .taxonomy_fingerprint = d.taxonomy_fingerprint};
    Dataset hold{.records = {}, .taxonomy_fingerprint = d.taxonomy_fingerprint};
    std::size_t cut = shuffled.size() - n_hold;
    train.records.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(cut));
    hold.records.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(cut), shuffled.end());
    return {std::move(train), std::move(hold)};
}

// External binary evaluation set: never trained on, only scored.
// JSON-Lines schema: {"id": string, "text": string, "hate": bool}.
struct EtsRecord {
    std::string id;
    std::string text;
    bool hate = false;
};

inline std::vector<EtsRecord> parse_ets_jsonl(std::string_view text) {
    std::vector<EtsRecord> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (detail::trim_whitespace(line).empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        auto fail = [&](const std::string& why) {
            raise(Errc::ParseError, "ets line " + std::to_string(line_no) + ": " + why);
        };
        if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
        if (!j.contains("id") || !j["id"].is_string()) fail("missing string field 'id'");
        if (!j.contains("text") || !j["text"].is_string()) fail("missing string field 'text'");
        if (!j.contains("hate") || !j["hate"].is_boolean()) fail("missing boolean field 'hate'");
        out.push_back(EtsRecord{j["id"].get<std::string>(), j["text"].get<std::string>(),
                                j["hate"].get<bool>()});
    }
    return out;
}

inline std::string to_jsonl(const std::vector<EtsRecord>& ets) {
    std::string out;
    for (const EtsRecord& r : ets) {
        ordered_json j;
        j["id"] = r.id;
        j["text"] = r.text;
        j["hate"] = r.hate;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline std::vector<EtsRecord> load_ets(const std::string& path) { return parse_ets_jsonl(read_file(path)); }

inline void save_ets(const std::vector<EtsRecord>& ets, const std::string& path) {
    write_file(path, to_jsonl(ets));
}

// Per node: soft = max(human indicator, model score). Human positives stay at
// 1.0; everywhere else the (already closed) prediction fills in. Labels are
// left untouched; the soft map covers every node.
inline Dataset fuse_annotations(const Taxonomy& t, const Dataset& d,
                                const std::vector<LabelVector>& predictions) {
    if (predictions.size() != d.records.size()) {
        raise(Errc::LengthMismatch, "have " + std::to_string(predictions.size()) + " predictions for " +
                                        std::to_string(d.records.size()) + " records");
    }
    if (!d.taxonomy_fingerprint.empty() && d.taxonomy_fingerprint != t.fingerprint()) {
        raise(Errc::FingerprintMismatch, "dataset is bound to a different taxonomy");
    }
    Dataset out;
    out.taxonomy_fingerprint = t.fingerprint();
    out.records.reserve(d.records.size());
    for (std::size_t r = 0; r < d.records.size(); ++r) {
        const LabelVector& pred = predictions[r];
        check_length(t, pred);
        for (int i = 0; i < t.node_count(); ++i) {
            double s = pred[static_cast<std::size_t>(i)];
            if (!(s >= 0.0 && s <= 1.0)) raise(Errc::Precondition, "prediction score out of [0,1]");
            int p = t.parent(i);
            if (p >= 0 && pred[static_cast<std::size_t>(p)] < s) {
                raise(Errc::Precondition, "prediction for record '" + d.records[r].id + "' is not closed upward");
            }
        }
        LabelVector human = encode(t, d.records[r].labels);
        Record rec = d.records[r];
        std::map<std::string, double> soft;
        for (int i = 0; i < t.node_count(); ++i) {
            soft[t.path(i)] = std::max(human[static_cast<std::size_t>(i)], pred[static_cast<std::size_t>(i)]);
        }
        rec.soft = std::move(soft);
        out.records.push_back(std::move(rec));
    }
    return out;
}

}  // namespace taxfuse
