#include "taxfuse/taxonomy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_util.hpp"

using namespace taxfuse;
using testutil::load_fixture_taxonomy;
using testutil::read_fixture;

namespace {

EditDirective reparent(std::string subject, std::string target) {
    return {DirectiveKind::Reparent, std::move(subject), std::move(target)};
}

std::multiset<std::string> name_multiset(const Taxonomy& t) {
    std::multiset<std::string> names;
    for (int i = 0; i < t.node_count(); ++i) names.insert(t.name(i));
    return names;
}

}  // namespace

TEST(TaxonomyParse, MinimalRoots) {
    Taxonomy t = Taxonomy::parse("No-hate\nHate\n");
    EXPECT_EQ(t.node_count(), 2);
    EXPECT_EQ(t.index_of("/No-hate"), 0);
    EXPECT_EQ(t.index_of("/Hate"), 1);
    Census c = t.census();
    EXPECT_EQ(c.classes, 0);
    EXPECT_EQ(c.leaves, 2);
}

TEST(TaxonomyParse, CommentsAndBlankLines) {
    Taxonomy t = Taxonomy::parse("# general remarks\nNo-hate\n\nHate\n  Target_of_hate\n");
    EXPECT_EQ(t.node_count(), 3);
    EXPECT_EQ(t.index_of("/Hate/Target_of_hate"), 2);
}

TEST(TaxonomyParse, IndexIsPreOrder) {
    Taxonomy t = Taxonomy::parse(
        "No-hate\n"
        "Hate\n"
        "  A\n"
        "    B\n"
        "  C\n");
    EXPECT_EQ(t.index_of("/Hate/A"), 2);
    EXPECT_EQ(t.index_of("/Hate/A/B"), 3);
    EXPECT_EQ(t.index_of("/Hate/C"), 4);
    EXPECT_EQ(t.parent(3), 2);
    EXPECT_EQ(t.depth(3), 2);
}

TEST(TaxonomyParse, DepthJumpFails) {
    try {
        Taxonomy::parse("No-hate\nHate\n    TooDeep\n");
        FAIL() << "expected INDENT_ERROR";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IndentError);
    }
}

TEST(TaxonomyParse, OddIndentFails) {
    try {
        Taxonomy::parse("No-hate\nHate\n X\n");
        FAIL() << "expected INDENT_ERROR";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IndentError);
    }
}

TEST(TaxonomyParse, DuplicateSiblingFails) {
    try {
        Taxonomy::parse("No-hate\nHate\n  A\n  A\n");
        FAIL() << "expected DUPLICATE_SIBLING";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DuplicateSibling);
    }
}

TEST(TaxonomyParse, BadCharacterFails) {
    try {
        Taxonomy::parse("No-hate\nHate\n  bad name\n");
        FAIL() << "expected BAD_CHAR";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadChar);
    }
}

TEST(TaxonomyParse, IndentedEmptyNameFails) {
    try {
        Taxonomy::parse("No-hate\nHate\n  \n");
        FAIL() << "expected EMPTY_NAME";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptyName);
    }
}

TEST(TaxonomyParse, WrongRootsFail) {
    try {
        Taxonomy::parse("Hate\nNo-hate\n");
        FAIL() << "expected INVALID_ROOTS";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InvalidRoots);
    }
}

TEST(TaxonomyFixtures, GeneralV1aCensus) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    EXPECT_EQ(t.node_count(), 67);
    Census c = t.census();
    EXPECT_EQ(c.classes, 23);
    EXPECT_EQ(c.leaves, 43);
}

TEST(TaxonomyFixtures, GeneralV1Census) {
    Taxonomy t = load_fixture_taxonomy("general_v1.tax");
    EXPECT_EQ(t.node_count(), 67);
    Census c = t.census();
    EXPECT_EQ(c.classes, 22);
    EXPECT_EQ(c.leaves, 44);
}

TEST(TaxonomyFixtures, RoundTripByteIdentical) {
    for (const char* name : {"general_v1.tax", "general_v1a.tax", "vidgen_base.tax"}) {
        std::string text = read_fixture(name);
        Taxonomy t = Taxonomy::parse(text);
        EXPECT_EQ(t.serialize(), text) << name;
    }
}

TEST(TaxonomyFixtures, SexualityDualRoleNodeSurvives) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    int cls = t.index_of("/Hate/Target_of_hate/Sexuality");
    int leaf = t.index_of("/Hate/Target_of_hate/Sexuality/Sexuality");
    EXPECT_FALSE(t.is_leaf(cls));
    EXPECT_TRUE(t.is_leaf(leaf));
}

TEST(TaxonomyAncestors, RootHasNone) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    EXPECT_TRUE(t.ancestors("/Hate").empty());
}

TEST(TaxonomyAncestors, JewsChain) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    std::vector<std::string> expected{"/Hate", "/Hate/Target_of_hate",
                                      "/Hate/Target_of_hate/Religion_or_belief"};
    EXPECT_EQ(t.ancestors("/Hate/Target_of_hate/Religion_or_belief/Jews"), expected);
}

TEST(TaxonomyAncestors, BlackUnderNonWhiteHasFive) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    auto anc = t.ancestors("/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white/Black");
    ASSERT_EQ(anc.size(), 5u);
    EXPECT_EQ(anc.back(), "/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white");
}

TEST(TaxonomyAncestors, UnknownPathFails) {
    Taxonomy t = Taxonomy::parse("No-hate\nHate\n");
    EXPECT_THROW(t.ancestors("/Hate/Nope"), Error);
}

TEST(TaxonomyDirectives, ReparentBlackTurnsV1IntoV1a) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    Taxonomy v1a = load_fixture_taxonomy("general_v1a.tax");
    std::vector<EditDirective> ds =
        parse_directives(read_fixture("reparent_black.directives"));
    ASSERT_EQ(ds.size(), 1u);
    Taxonomy::ApplyResult applied = v1.apply_directives_traced(ds);
    EXPECT_EQ(applied.taxonomy.node_count(), v1.node_count());
    EXPECT_EQ(applied.taxonomy.serialize(), v1a.serialize());
    ASSERT_EQ(applied.rewrites.size(), 1u);
    EXPECT_EQ(applied.rewrites[0].old_prefix,
              "/Hate/Target_of_hate/Physical_attributes/Skin_color/Black");
    EXPECT_EQ(applied.rewrites[0].new_prefix,
              "/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white/Black");
}

TEST(TaxonomyDirectives, EmptyListIsIdentity) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    Taxonomy same = v1.apply_directives({});
    EXPECT_EQ(same.serialize(), v1.serialize());
    EXPECT_EQ(same.fingerprint(), v1.fingerprint());
}

TEST(TaxonomyDirectives, AddNodeGrowsByOne) {
    Taxonomy base = load_fixture_taxonomy("vidgen_base.tax");
    ASSERT_FALSE(base.find("/Hate/Target_of_hate/Russian").has_value());
    Taxonomy grown = base.apply_directives(
        {{DirectiveKind::AddNode, "Russian", "/Hate/Target_of_hate"}});
    EXPECT_EQ(grown.node_count(), base.node_count() + 1);
    EXPECT_TRUE(grown.find("/Hate/Target_of_hate/Russian").has_value());
}

TEST(TaxonomyDirectives, RemoveSubtreeDropsLeafFromCensus) {
    Taxonomy v1a = load_fixture_taxonomy("general_v1a.tax");
    Census before = v1a.census();
    Taxonomy after = v1a.apply_directives(
        {{DirectiveKind::RemoveSubtree, "/Hate/Target_of_hate/Religion_or_belief/Hindus", {}}});
    EXPECT_EQ(after.census().leaves, before.leaves - 1);
    EXPECT_EQ(after.node_count(), v1a.node_count() - 1);
}

TEST(TaxonomyDirectives, ReparentUnderOwnDescendantFails) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    try {
        v1.apply_directives({reparent("/Hate/Target_of_hate",
                                      "/Hate/Target_of_hate/Religion_or_belief")});
        FAIL() << "expected CYCLE_CREATED";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::CycleCreated);
    }
}

TEST(TaxonomyDirectives, ReparentMissingSubjectFails) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    try {
        v1.apply_directives({reparent("/Hate/Nope", "/Hate/Target_of_hate")});
        FAIL() << "expected UNKNOWN_PATH";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnknownPath);
    }
}

TEST(TaxonomyDirectives, DuplicateSiblingAtTargetFails) {
    Taxonomy t = Taxonomy::parse(
        "No-hate\n"
        "Hate\n"
        "  A\n"
        "    X\n"
        "  B\n"
        "    X\n");
    try {
        t.apply_directives({reparent("/Hate/A/X", "/Hate/B")});
        FAIL() << "expected DUPLICATE_SIBLING";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DuplicateSibling);
    }
}

TEST(TaxonomyDirectives, ReparentPreservesNamesAndDescendants) {
    Rng rng(42);
    for (int round = 0; round < 50; ++round) {
        Taxonomy t = testutil::random_taxonomy(rng, 30);
        // Pick subject below level 0 and a target outside its subtree.
        int subject = 2 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(t.node_count() - 2)));
        std::string subject_path = t.path(subject);
        std::vector<int> candidates;
        for (int i = 1; i < t.node_count(); ++i) {  // any node under Hate incl. Hate itself
            const std::string& p = t.path(i);
            bool inside = p == subject_path || (p.size() > subject_path.size() &&
                                                p.compare(0, subject_path.size(), subject_path) == 0 &&
                                                p[subject_path.size()] == '/');
            if (!inside) candidates.push_back(i);
        }
        int target = candidates[rng.bounded(candidates.size())];
        // Skip sibling-name clashes; they are a separate error path.
        bool clash = false;
        for (int c : t.children(target)) clash |= t.name(c) == t.name(subject);
        if (clash) continue;

        std::vector<std::string> old_descendants;
        for (int i = 0; i < t.node_count(); ++i) {
            const std::string& p = t.path(i);
            if (p.size() > subject_path.size() && p.compare(0, subject_path.size(), subject_path) == 0 &&
                p[subject_path.size()] == '/') {
                old_descendants.push_back(p.substr(subject_path.size()));
            }
        }
        Taxonomy after = t.apply_directives({reparent(subject_path, t.path(target))});
        EXPECT_EQ(after.node_count(), t.node_count());
        EXPECT_EQ(name_multiset(after), name_multiset(t));
        std::string new_path = t.path(target) + "/" + t.name(subject);
        for (const std::string& suffix : old_descendants) {
            EXPECT_TRUE(after.find(new_path + suffix).has_value())
                << "descendant " << suffix << " lost after reparent";
        }
    }
}

TEST(TaxonomyProperties, PreOrderIndexBijective) {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        Taxonomy t = testutil::random_taxonomy(rng, 40);
        std::set<int> seen;
        for (int i = 0; i < t.node_count(); ++i) {
            EXPECT_EQ(t.index_of(t.path(i)), i);
            seen.insert(i);
        }
        EXPECT_EQ(static_cast<int>(seen.size()), t.node_count());
    }
}

TEST(TaxonomyProperties, SerializeParseRoundTrip) {
    Rng rng(11);
    for (int round = 0; round < 20; ++round) {
        Taxonomy t = testutil::random_taxonomy(rng, 25);
        Taxonomy back = Taxonomy::parse(t.serialize());
        EXPECT_EQ(back.serialize(), t.serialize());
        EXPECT_EQ(back.fingerprint(), t.fingerprint());
    }
}

TEST(TaxonomyProperties, DirectiveConcatenationMatchesSequential) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    std::vector<EditDirective> first{
        {DirectiveKind::AddNode, "Extra", "/Hate/Target_of_hate/National_origin"}};
    std::vector<EditDirective> second{
        reparent("/Hate/Target_of_hate/National_origin/Extra", "/Hate/Target_of_hate/Class")};
    Taxonomy sequential = v1.apply_directives(first).apply_directives(second);
    std::vector<EditDirective> both = first;
    both.insert(both.end(), second.begin(), second.end());
    Taxonomy concatenated = v1.apply_directives(both);
    EXPECT_EQ(sequential.serialize(), concatenated.serialize());
}

TEST(TaxonomyDiff, ReportsAddedAndRemoved) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    Taxonomy v1a = load_fixture_taxonomy("general_v1a.tax");
    TaxonomyDiff d = taxonomy_diff(v1, v1a);
    ASSERT_EQ(d.added.size(), 1u);
    ASSERT_EQ(d.removed.size(), 1u);
    EXPECT_EQ(d.added[0], "/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white/Black");
    EXPECT_EQ(d.removed[0], "/Hate/Target_of_hate/Physical_attributes/Skin_color/Black");
}

TEST(DirectiveFile, ParseErrors) {
    EXPECT_THROW(parse_directives("REPARENT /a\n"), Error);
    EXPECT_THROW(parse_directives("FROB /a UNDER /b\n"), Error);
    EXPECT_EQ(parse_directives("# only a comment\n\n").size(), 0u);
}
