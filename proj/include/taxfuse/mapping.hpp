#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taxfuse/dataset.hpp"
#include "taxfuse/error.hpp"
#include "taxfuse/taxonomy.hpp"

namespace taxfuse {

// Word-level canonical form of a source label: lowercase, with runs of
// '.', '_', '/', and whitespace collapsed into single underscores.
inline std::string normalize_label(std::string_view s) {
    auto is_sep = [](unsigned char c) {
        return c == '.' || c == '_' || c == '/' || c == ' ' || (c >= '\t' && c <= '\r');
    };
    std::string out;
    out.reserve(s.size());
    bool pending_sep = false;
    for (unsigned char c : s) {
        if (is_sep(c)) {
            pending_sep = !out.empty();
            continue;
        }
        if (pending_sep) {
            out.push_back('_');
            pending_sep = false;
        }
        out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    }
    return out;
}

enum class ResolveKind { Path, Drop, Unknown };

struct Resolution {
    ResolveKind kind;
    std::string path;  // set when kind == Path
};

struct MappingReport {
    long mapped = 0;
    long dropped = 0;
    long unknown_occurrences = 0;
    std::vector<std::string> unknown_labels;  // sorted, unique, as seen in the data
};

// Source-label -> taxonomy-path table. Keys are stored normalized; an empty
// target means DROP.
class LabelMapping {
public:
    LabelMapping() = default;

    // Mapping file: SOURCE_LABEL<TAB>TARGET per line, TARGET a full path or
    // the literal DROP; '#' comments.
    static LabelMapping parse(std::string_view text) {
        LabelMapping m;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;
            if (line.empty() || line.front() == '#') continue;
            std::size_t tab = line.find('\t');
            if (tab == std::string_view::npos) {
                raise(Errc::ParseError, "mapping line " + std::to_string(line_no) + ": expected SOURCE<TAB>TARGET");
            }
            std::string key = normalize_label(line.substr(0, tab));
            std::string_view target = detail::trim_whitespace(line.substr(tab + 1));
            if (key.empty()) {
                raise(Errc::ParseError, "mapping line " + std::to_string(line_no) + ": empty source label");
            }
            if (target.empty()) {
                raise(Errc::ParseError, "mapping line " + std::to_string(line_no) + ": empty target");
            }
            if (!m.entries_.emplace(std::move(key), target == "DROP" ? std::string() : std::string(target))
                     .second) {
                raise(Errc::ParseError, "mapping line " + std::to_string(line_no) +
                                            ": duplicate source label after normalization");
            }
        }
        return m;
    }

    void add(std::string_view source, std::string target_path_or_empty_for_drop) {
        entries_[normalize_label(source)] = std::move(target_path_or_empty_for_drop);
    }

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, std::string>& entries() const { return entries_; }

    // Every non-DROP target must exist in the bound taxonomy.
    void validate(const Taxonomy& t) const {
        for (const auto& [source, target] : entries_) {
            if (!target.empty() && !t.find(target)) {
                raise(Errc::MappingUnbound, "mapping '" + source + "' targets unknown path '" + target + "'");
            }
        }
    }

    // Rewrite targets through REPARENT-induced prefix renames (in order), for
    // rebinding the same mapping file against an edited taxonomy.
    LabelMapping rebound(const std::vector<PathRewrite>& rewrites) const {
        LabelMapping m = *this;
        for (auto& [source, target] : m.entries_) {
            if (target.empty()) continue;
            for (const PathRewrite& rw : rewrites) {
                if (target == rw.old_prefix) {
                    target = rw.new_prefix;
                } else if (target.size() > rw.old_prefix.size() &&
                           target.compare(0, rw.old_prefix.size(), rw.old_prefix) == 0 &&
                           target[rw.old_prefix.size()] == '/') {
                    target = rw.new_prefix + target.substr(rw.old_prefix.size());
                }
            }
        }
        return m;
    }

    Resolution resolve(const Taxonomy& t, std::string_view source_label) const {
        auto it = entries_.find(normalize_label(source_label));
        if (it == entries_.end()) return {ResolveKind::Unknown, {}};
        if (it->second.empty()) return {ResolveKind::Drop, {}};
        if (!t.find(it->second)) {
            raise(Errc::MappingUnbound, "mapping targets unknown path '" + it->second + "'");
        }
        return {ResolveKind::Path, it->second};
    }

private:
    std::map<std::string, std::string> entries_;
};

// Replace source-schema labels with taxonomy paths record by record. DROPs
// vanish, unknown labels are collected; records are never deleted here (the
// cleaning stage decides removal).
inline std::pair<Dataset, MappingReport> apply_mapping(const LabelMapping& m, const Taxonomy& t,
                                                       const Dataset& d) {
    m.validate(t);
    Dataset out;
    out.taxonomy_fingerprint = t.fingerprint();
    out.records.reserve(d.records.size());
    MappingReport report;
    std::set<std::string> unknown;
    for (const Record& r : d.records) {
        Record mapped = r;
        mapped.labels.clear();
        for (const std::string& label : r.labels) {
            Resolution res = m.resolve(t, label);
            switch (res.kind) {
                case ResolveKind::Path:
                    ++report.mapped;
                    mapped.labels.push_back(res.path);
                    break;
                case ResolveKind::Drop:
                    ++report.dropped;
                    break;
                case ResolveKind::Unknown:
                    ++report.unknown_occurrences;
                    unknown.insert(label);
                    break;
            }
        }
        detail::sort_unique(mapped.labels);
        out.records.push_back(std::move(mapped));
    }
    report.unknown_labels.assign(unknown.begin(), unknown.end());
    return {std::move(out), std::move(report)};
}

}  // namespace taxfuse
