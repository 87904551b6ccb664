#include "taxfuse/mapping.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace taxfuse;
using testutil::load_fixture_taxonomy;
using testutil::read_fixture;

TEST(NormalizeLabel, CollapsesSeparators) {
    EXPECT_EQ(normalize_label("old.people"), "old_people");
    EXPECT_EQ(normalize_label("PEOPLE OF COLOR"), "people_of_color");
    EXPECT_EQ(normalize_label("support.for.hateful.entities"), "support_for_hateful_entities");
    EXPECT_EQ(normalize_label("  spaced__out..label  "), "spaced_out_label");
    EXPECT_EQ(normalize_label("LGBT+"), "lgbt+");
    EXPECT_EQ(normalize_label(""), "");
    EXPECT_EQ(normalize_label("..."), "");
}

TEST(MappingFixtures, FantonResolves) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelMapping m = LabelMapping::parse(read_fixture("fanton.map"));
    EXPECT_EQ(m.size(), 11u);
    m.validate(t);

    Resolution r = m.resolve(t, "JEWS");
    EXPECT_EQ(r.kind, ResolveKind::Path);
    EXPECT_EQ(r.path, "/Hate/Target_of_hate/Religion_or_belief/Jews");

    EXPECT_EQ(m.resolve(t, "LGBT+").path, "/Hate/Target_of_hate/Movement/LGBTQ+");
    EXPECT_EQ(m.resolve(t, "OTHER").kind, ResolveKind::Drop);
    EXPECT_EQ(m.resolve(t, "zorgon").kind, ResolveKind::Unknown);
    // Alias and canonical spelling agree.
    EXPECT_EQ(m.resolve(t, "POC").path, m.resolve(t, "PEOPLE OF COLOR").path);
}

TEST(MappingFixtures, VidgenBindsToV1AndRebindsToV1a) {
    Taxonomy v1 = load_fixture_taxonomy("general_v1.tax");
    Taxonomy v1a = load_fixture_taxonomy("general_v1a.tax");
    LabelMapping m = LabelMapping::parse(read_fixture("vidgen.map"));
    m.validate(v1);

    EXPECT_EQ(m.resolve(v1, "old.people").path, "/Hate/Target_of_hate/Physical_attributes/Age/Old");
    EXPECT_EQ(m.resolve(v1, "black").path, "/Hate/Target_of_hate/Physical_attributes/Skin_color/Black");

    // Against the edited tree the stale Black path must refuse...
    EXPECT_THROW(m.validate(v1a), Error);
    // ...until rebinding through the reparent rewrites.
    auto applied = v1.apply_directives_traced(parse_directives(read_fixture("reparent_black.directives")));
    LabelMapping rebound = m.rebound(applied.rewrites);
    rebound.validate(v1a);
    EXPECT_EQ(rebound.resolve(v1a, "black").path,
              "/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white/Black");
}

TEST(MappingResolve, IdempotentUnderNormalization) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelMapping m = LabelMapping::parse(read_fixture("vidgen.map"));
    const char* labels[] = {"old.people", "OLD PEOPLE", "Russian", "eastern.europe", "nope"};
    for (const char* l : labels) {
        Resolution direct = m.resolve(t, l);
        Resolution via_norm = m.resolve(t, normalize_label(l));
        EXPECT_EQ(direct.kind, via_norm.kind) << l;
        EXPECT_EQ(direct.path, via_norm.path) << l;
    }
}

TEST(MappingParse, RejectsBadLines) {
    EXPECT_THROW(LabelMapping::parse("NOTAB\n"), Error);
    EXPECT_THROW(LabelMapping::parse("A\t\n"), Error);
    EXPECT_THROW(LabelMapping::parse("A\t/Hate\na\t/Hate\n"), Error);  // dup after normalization
}

TEST(MappingValidate, UnboundTargetFails) {
    Taxonomy t = Taxonomy::parse("No-hate\nHate\n");
    LabelMapping m;
    m.add("x", "/Hate/Missing");
    try {
        m.validate(t);
        FAIL() << "expected MAPPING_UNBOUND";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::MappingUnbound);
    }
}

TEST(ApplyMapping, FantonRecordExample) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelMapping m = LabelMapping::parse(read_fixture("fanton.map"));
    Dataset d;
    d.records.push_back(Record{"r1", "text one", {"JEWS", "WOMEN"}, std::nullopt, "fanton"});
    d.records.push_back(Record{"r2", "text two", {"OTHER"}, std::nullopt, "fanton"});
    auto [mapped, report] = apply_mapping(m, t, d);
    ASSERT_EQ(mapped.records.size(), 2u);
    std::vector<std::string> expected{"/Hate/Target_of_hate/Physical_attributes/Gender/Women",
                                      "/Hate/Target_of_hate/Religion_or_belief/Jews"};
    EXPECT_EQ(mapped.records[0].labels, expected);
    EXPECT_TRUE(mapped.records[1].labels.empty());
    EXPECT_EQ(report.mapped, 2);
    EXPECT_EQ(report.dropped, 1);
    EXPECT_EQ(report.unknown_occurrences, 0);
    EXPECT_EQ(mapped.taxonomy_fingerprint, t.fingerprint());
}

TEST(ApplyMapping, EmptyDataset) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelMapping m = LabelMapping::parse(read_fixture("fanton.map"));
    auto [mapped, report] = apply_mapping(m, t, Dataset{});
    EXPECT_TRUE(mapped.records.empty());
    EXPECT_EQ(report.mapped + report.dropped + report.unknown_occurrences, 0);
}

TEST(ApplyMapping, AccountingIdentityOnFuzzedData) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelMapping m = LabelMapping::parse(read_fixture("fanton.map"));
    Rng rng(99);
    const char* vocabulary[] = {"JEWS",  "WOMEN",   "OTHER", "MUSLIM", "zorgon",
                                "blurb", "ROMANI",  "POC",   "LGBT+",  "unmapped.label"};
    for (int round = 0; round < 50; ++round) {
        Dataset d;
        long total_occurrences = 0;
        int n = 1 + static_cast<int>(rng.bounded(20));
        for (int i = 0; i < n; ++i) {
            Record r;
            r.id = "r" + std::to_string(i);
            r.text = "t" + std::to_string(i);
            int k = static_cast<int>(rng.bounded(4));
            for (int j = 0; j < k; ++j) {
                r.labels.push_back(vocabulary[rng.bounded(std::size(vocabulary))]);
            }
            detail::sort_unique(r.labels);
            total_occurrences += static_cast<long>(r.labels.size());
            d.records.push_back(std::move(r));
        }
        auto [mapped, report] = apply_mapping(m, t, d);
        EXPECT_EQ(mapped.records.size(), d.records.size());
        EXPECT_EQ(report.mapped + report.dropped + report.unknown_occurrences, total_occurrences);
        for (const std::string& u : report.unknown_labels) {
            EXPECT_EQ(m.resolve(t, u).kind, ResolveKind::Unknown);
        }
    }
}
