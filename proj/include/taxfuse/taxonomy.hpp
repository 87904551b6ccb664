#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxfuse/error.hpp"
#include "taxfuse/fingerprint.hpp"

namespace taxfuse {

// One node of a label taxonomy while it is being built or edited. Validated
// wholesale when turned into a Taxonomy.
struct TaxonomyNode {
    std::string name;
    std::vector<TaxonomyNode> children;
};

struct Census {
    int classes = 0;  // internal nodes below level 0
    int leaves = 0;   // childless nodes, level-0 roots included
};

enum class DirectiveKind { AddNode, Reparent, RemoveSubtree };

// ADD_NODE: subject is the new node's name, target_parent the path it joins.
// REPARENT: subject (full path) moves, with its subtree, under target_parent.
// REMOVE_SUBTREE: subject (full path) and everything below it is deleted.
struct EditDirective {
    DirectiveKind kind;
    std::string subject;
    std::string target_parent;
};

// A REPARENT renames every path in the moved subtree by prefix. Consumers
// holding paths (label mappings, datasets) rebind through these.
struct PathRewrite {
    std::string old_prefix;
    std::string new_prefix;
};

inline bool valid_name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '+' || c == '-';
}

inline void validate_name(std::string_view name) {
    if (name.empty()) raise(Errc::EmptyName, "node name is empty");
    for (char c : name) {
        if (!valid_name_char(c)) {
            raise(Errc::BadChar, "invalid character in node name '" + std::string(name) + "'");
        }
    }
}

// Immutable rooted label tree with the canonical depth-first pre-order index.
// Level 0 is always the pair {No-hate, Hate}, in that order.
class Taxonomy {
public:
    static Taxonomy from_roots(const std::vector<TaxonomyNode>& roots) {
        if (roots.size() != 2 || roots[0].name != "No-hate" || roots[1].name != "Hate") {
            raise(Errc::InvalidRoots, "level 0 must be exactly {No-hate, Hate}");
        }
        Taxonomy t;
        for (const TaxonomyNode& r : roots) t.add_subtree(r, -1);
        t.finish();
        return t;
    }

    // Taxonomy file format: one node per line, depth = leading spaces / 2,
    // '#'-prefixed lines are comments, names limited to [A-Za-z0-9_+-]+.
    static Taxonomy parse(std::string_view text) {
        std::vector<TaxonomyNode> roots;
        std::vector<TaxonomyNode*> stack;  // stack[d] = last node seen at depth d
        int prev_depth = -1;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;
            if (line.empty()) continue;
            if (line.front() == '#') continue;
            std::size_t spaces = 0;
            while (spaces < line.size() && line[spaces] == ' ') ++spaces;
            if (spaces == line.size()) {
                raise(Errc::EmptyName, "line " + std::to_string(line_no) + ": indentation without a name");
            }
            if (spaces % 2 != 0) {
                raise(Errc::IndentError, "line " + std::to_string(line_no) + ": odd indentation");
            }
            int depth = static_cast<int>(spaces / 2);
            if (depth > prev_depth + 1) {
                raise(Errc::IndentError, "line " + std::to_string(line_no) + ": depth jumps by more than one level");
            }
            std::string_view name = line.substr(spaces);
            validate_name(name);

            TaxonomyNode node{std::string(name), {}};
            stack.resize(static_cast<std::size_t>(depth));
            std::vector<TaxonomyNode>* siblings;
            if (depth == 0) {
                siblings = &roots;
            } else {
                siblings = &stack[static_cast<std::size_t>(depth) - 1]->children;
            }
            for (const TaxonomyNode& s : *siblings) {
                if (s.name == node.name) {
                    raise(Errc::DuplicateSibling,
                          "line " + std::to_string(line_no) + ": duplicate sibling '" + node.name + "'");
                }
            }
            siblings->push_back(std::move(node));
            stack.push_back(&siblings->back());
            prev_depth = depth;
        }
        return from_roots(roots);
    }

    int node_count() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::string& path(int i) const { return paths_[static_cast<std::size_t>(i)]; }
    int parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }
    int depth(int i) const { return depth_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& children(int i) const { return children_[static_cast<std::size_t>(i)]; }
    bool is_leaf(int i) const { return children(i).empty(); }

    std::optional<int> find(std::string_view path) const {
        auto it = index_.find(path);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int index_of(std::string_view path) const {
        auto i = find(path);
        if (!i) raise(Errc::UnknownPath, "no node at path '" + std::string(path) + "'");
        return *i;
    }

    // Root-first list of ancestor paths, the node itself excluded.
    std::vector<std::string> ancestors(std::string_view path) const {
        int i = index_of(path);
        std::vector<std::string> out;
        for (int p = parent_[static_cast<std::size_t>(i)]; p >= 0; p = parent_[static_cast<std::size_t>(p)]) {
            out.push_back(paths_[static_cast<std::size_t>(p)]);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    Census census() const {
        Census c;
        for (int i = 0; i < node_count(); ++i) {
            if (is_leaf(i)) {
                ++c.leaves;
            } else if (depth(i) > 0) {
                ++c.classes;
            }
        }
        return c;
    }

    // Canonical form: pre-order, two spaces per level, LF, no comments.
    std::string serialize() const {
        std::string out;
        for (int i = 0; i < node_count(); ++i) {
            out.append(static_cast<std::size_t>(2 * depth(i)), ' ');
            out += names_[static_cast<std::size_t>(i)];
            out += '\n';
        }
        return out;
    }

    // SHA-256 of the canonical serialization; stamps models and datasets.
    const std::string& fingerprint() const { return fingerprint_; }

    struct ApplyResult;

    // Directives run in order, each validated against the tree state of its
    // turn. Returns the new taxonomy plus the REPARENT-induced path renames.
    ApplyResult apply_directives_traced(const std::vector<EditDirective>& directives) const;

    Taxonomy apply_directives(const std::vector<EditDirective>& directives) const;

    // Rebuildable edit form of the tree.
    std::vector<TaxonomyNode> to_nodes() const {
        std::vector<TaxonomyNode> roots;
        for (int i = 0; i < node_count(); ++i) {
            if (parent(i) < 0) roots.push_back(subtree_nodes(i));
        }
        return roots;
    }

private:
    Taxonomy() = default;

    void add_subtree(const TaxonomyNode& n, int parent_index) {
        validate_name(n.name);
        int index = node_count();
        std::string p = parent_index < 0 ? "/" + n.name
                                         : paths_[static_cast<std::size_t>(parent_index)] + "/" + n.name;
        if (index_.count(p)) raise(Errc::DuplicateSibling, "duplicate sibling '" + n.name + "'");
        names_.push_back(n.name);
        parent_.push_back(parent_index);
        depth_.push_back(parent_index < 0 ? 0 : depth_[static_cast<std::size_t>(parent_index)] + 1);
        children_.emplace_back();
        paths_.push_back(p);
        index_.emplace(std::move(p), index);
        if (parent_index >= 0) children_[static_cast<std::size_t>(parent_index)].push_back(index);
        for (const TaxonomyNode& c : n.children) add_subtree(c, index);
    }

    void finish() { fingerprint_ = sha256_hex(serialize()); }

    TaxonomyNode subtree_nodes(int i) const {
        TaxonomyNode n{name(i), {}};
        for (int c : children(i)) n.children.push_back(subtree_nodes(c));
        return n;
    }

    static bool is_root_path(std::string_view path) {
        return path.find('/', 1) == std::string_view::npos;
    }

    static bool is_strict_prefix(std::string_view prefix, std::string_view path) {
        return path.size() > prefix.size() && path.substr(0, prefix.size()) == prefix &&
               path[prefix.size()] == '/';
    }

    static std::vector<std::string_view> split_path(std::string_view path) {
        std::vector<std::string_view> parts;
        if (path.empty() || path.front() != '/') return parts;
        std::size_t start = 1;
        while (start <= path.size()) {
            std::size_t end = path.find('/', start);
            if (end == std::string_view::npos) end = path.size();
            if (end == start) return {};  // empty segment -> malformed
            parts.push_back(path.substr(start, end - start));
            start = end + 1;
        }
        return parts;
    }

    static TaxonomyNode* locate(std::vector<TaxonomyNode>& roots, std::string_view path) {
        std::vector<std::string_view> parts = split_path(path);
        if (parts.empty()) return nullptr;
        std::vector<TaxonomyNode>* level = &roots;
        TaxonomyNode* node = nullptr;
        for (std::string_view part : parts) {
            node = nullptr;
            for (TaxonomyNode& cand : *level) {
                if (cand.name == part) {
                    node = &cand;
                    break;
                }
            }
            if (!node) return nullptr;
            level = &node->children;
        }
        return node;
    }

    // Remove the node at `path` from the forest and hand it back.
    static TaxonomyNode detach(std::vector<TaxonomyNode>& roots, std::string_view path) {
        std::vector<std::string_view> parts = split_path(path);
        if (parts.empty()) raise(Errc::UnknownPath, "malformed path '" + std::string(path) + "'");
        std::vector<TaxonomyNode>* level = &roots;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            TaxonomyNode* next = nullptr;
            for (TaxonomyNode& cand : *level) {
                if (cand.name == parts[i]) {
                    next = &cand;
                    break;
                }
            }
            if (!next) raise(Errc::UnknownPath, "no node at path '" + std::string(path) + "'");
            level = &next->children;
        }
        for (auto it = level->begin(); it != level->end(); ++it) {
            if (it->name == parts.back()) {
                TaxonomyNode out = std::move(*it);
                level->erase(it);
                return out;
            }
        }
        raise(Errc::UnknownPath, "no node at path '" + std::string(path) + "'");
    }

    std::vector<std::string> names_;
    std::vector<int> parent_;
    std::vector<int> depth_;
    std::vector<std::vector<int>> children_;
    std::vector<std::string> paths_;
    std::map<std::string, int, std::less<>> index_;
    std::string fingerprint_;
};

struct Taxonomy::ApplyResult {
    Taxonomy taxonomy;
    std::vector<PathRewrite> rewrites;
};

inline Taxonomy::ApplyResult Taxonomy::apply_directives_traced(
    const std::vector<EditDirective>& directives) const {
    std::vector<TaxonomyNode> roots = to_nodes();
    std::vector<PathRewrite> rewrites;
    for (const EditDirective& d : directives) {
        switch (d.kind) {
            case DirectiveKind::AddNode: {
                validate_name(d.subject);
                TaxonomyNode* parent = locate(roots, d.target_parent);
                if (!parent) raise(Errc::UnknownPath, "ADD_NODE target '" + d.target_parent + "'");
                for (const TaxonomyNode& s : parent->children) {
                    if (s.name == d.subject) {
                        raise(Errc::DuplicateSibling, "ADD_NODE '" + d.subject + "' already present");
                    }
                }
                parent->children.push_back(TaxonomyNode{d.subject, {}});
                break;
            }
            case DirectiveKind::Reparent: {
                if (is_root_path(d.subject)) {
                    raise(Errc::Precondition, "cannot reparent a level-0 root");
                }
                if (d.target_parent == d.subject || is_strict_prefix(d.subject, d.target_parent)) {
                    raise(Errc::CycleCreated,
                          "REPARENT target '" + d.target_parent + "' lies inside '" + d.subject + "'");
                }
                // Detach before locating the target: erasing the subject
                // shifts its siblings, which may include the target.
                TaxonomyNode moved = detach(roots, d.subject);
                TaxonomyNode* target = locate(roots, d.target_parent);
                if (!target) raise(Errc::UnknownPath, "REPARENT target '" + d.target_parent + "'");
                for (const TaxonomyNode& s : target->children) {
                    if (s.name == moved.name) {
                        raise(Errc::DuplicateSibling,
                              "REPARENT '" + moved.name + "' clashes under '" + d.target_parent + "'");
                    }
                }
                std::string new_path = d.target_parent + "/" + moved.name;
                if (new_path != d.subject) rewrites.push_back(PathRewrite{d.subject, new_path});
                target->children.push_back(std::move(moved));
                break;
            }
            case DirectiveKind::RemoveSubtree: {
                if (is_root_path(d.subject)) {
                    raise(Errc::Precondition, "cannot remove a level-0 root");
                }
                detach(roots, d.subject);
                break;
            }
        }
    }
    return ApplyResult{from_roots(roots), std::move(rewrites)};
}

inline Taxonomy Taxonomy::apply_directives(const std::vector<EditDirective>& directives) const {
    return apply_directives_traced(directives).taxonomy;
}

inline bool operator==(const Taxonomy& a, const Taxonomy& b) {
    return a.fingerprint() == b.fingerprint();
}

// Path-set difference between two taxonomies, each side sorted.
struct TaxonomyDiff {
    std::vector<std::string> added;    // present in `after` only
    std::vector<std::string> removed;  // present in `before` only
};

inline TaxonomyDiff taxonomy_diff(const Taxonomy& before, const Taxonomy& after) {
    std::vector<std::string> a, b;
    for (int i = 0; i < before.node_count(); ++i) a.push_back(before.path(i));
    for (int i = 0; i < after.node_count(); ++i) b.push_back(after.path(i));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    TaxonomyDiff d;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.added));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.removed));
    return d;
}

// Directive file: one directive per line, '#' comments.
//   ADD_NODE <name> UNDER <parent_path>
//   REPARENT <subject_path> UNDER <parent_path>
//   REMOVE_SUBTREE <subject_path>
inline std::vector<EditDirective> parse_directives(std::string_view text) {
    std::vector<EditDirective> out;
    int line_no = 0;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        raise(Errc::ParseError, "directives line " + std::to_string(line_no) + ": " + why);
    };
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        std::vector<std::string_view> tok;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > start) tok.push_back(line.substr(start, i - start));
        }
        if (tok.empty() || tok[0].front() == '#') continue;
        EditDirective d;
        if (tok[0] == "ADD_NODE") {
            if (tok.size() != 4 || tok[2] != "UNDER") fail("expected ADD_NODE <name> UNDER <parent_path>");
            d = {DirectiveKind::AddNode, std::string(tok[1]), std::string(tok[3])};
        } else if (tok[0] == "REPARENT") {
            if (tok.size() != 4 || tok[2] != "UNDER") fail("expected REPARENT <path> UNDER <parent_path>");
            d = {DirectiveKind::Reparent, std::string(tok[1]), std::string(tok[3])};
        } else if (tok[0] == "REMOVE_SUBTREE") {
            if (tok.size() != 2) fail("expected REMOVE_SUBTREE <path>");
            d = {DirectiveKind::RemoveSubtree, std::string(tok[1]), {}};
        } else {
            fail("unknown directive '" + std::string(tok[0]) + "'");
        }
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace taxfuse
