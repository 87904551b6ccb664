#include "taxfuse/encoding.hpp"

#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

using namespace taxfuse;
using testutil::load_fixture_taxonomy;

namespace {

// Independent closure oracle: plain set union over repeated parent lookups,
// no shared code with close_upward.
std::set<std::string> closure_oracle(const Taxonomy& t, const std::vector<std::string>& labels) {
    std::set<std::string> out;
    for (const std::string& label : labels) {
        out.insert(label);
        for (const std::string& a : t.ancestors(label)) out.insert(a);
    }
    return out;
}

const char* kBlack = "/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white/Black";
const char* kNonWhite = "/Hate/Target_of_hate/Physical_attributes/Skin_color/Non_white";
const char* kJews = "/Hate/Target_of_hate/Religion_or_belief/Jews";

}  // namespace

TEST(Encode, BlackPathReadsAllOnes) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v = encode(t, {kBlack});
    // Restricted to the chain below the Hate root, the encoding is [1,1,1,1,1].
    const char* chain[] = {"/Hate/Target_of_hate", "/Hate/Target_of_hate/Physical_attributes",
                           "/Hate/Target_of_hate/Physical_attributes/Skin_color", kNonWhite, kBlack};
    for (const char* p : chain) EXPECT_EQ(v[static_cast<std::size_t>(t.index_of(p))], 1.0) << p;
    EXPECT_EQ(v[static_cast<std::size_t>(t.index_of("/Hate"))], 1.0);

    // Hate toward the parent class flips only the last position.
    LabelVector w = encode(t, {kNonWhite});
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(w[static_cast<std::size_t>(t.index_of(chain[i]))], 1.0);
    }
    EXPECT_EQ(w[static_cast<std::size_t>(t.index_of(kBlack))], 0.0);
}

TEST(Encode, EmptySetIsAllZero) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v = encode(t, {});
    for (double s : v) EXPECT_EQ(s, 0.0);
}

TEST(Encode, JewsMatchesOracleExactly) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v = encode(t, {kJews});
    std::set<std::string> expected = closure_oracle(t, {kJews});
    for (int i = 0; i < t.node_count(); ++i) {
        EXPECT_EQ(v[static_cast<std::size_t>(i)] == 1.0, expected.count(t.path(i)) > 0) << t.path(i);
    }
}

TEST(Encode, UnknownPathFails) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    EXPECT_THROW(encode(t, {"/Hate/Nope"}), Error);
}

TEST(Encode, SparsityBound) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    Rng rng(5);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::string> labels = testutil::random_label_set(t, rng, 5);
        LabelVector v = encode(t, labels);
        int popcount = 0;
        for (double s : v) popcount += s == 1.0 ? 1 : 0;
        int bound = 0;
        for (const std::string& l : labels) bound += t.depth(t.index_of(l)) + 1;
        EXPECT_LE(popcount, bound);
    }
}

TEST(CloseUpward, BinaryClosedIsFixedPoint) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v = encode(t, {kJews, kBlack});
    EXPECT_EQ(close_upward(t, v), v);
}

TEST(CloseUpward, LiftsAncestorsToChildScore) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v(static_cast<std::size_t>(t.node_count()), 0.0);
    v[static_cast<std::size_t>(t.index_of(kBlack))] = 0.9;
    LabelVector closed = close_upward(t, v);
    for (const std::string& a : t.ancestors(kBlack)) {
        EXPECT_EQ(closed[static_cast<std::size_t>(t.index_of(a))], 0.9) << a;
    }
}

TEST(CloseUpward, MaxWinsOverIntermediate) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v(static_cast<std::size_t>(t.node_count()), 0.0);
    v[static_cast<std::size_t>(t.index_of(kJews))] = 0.4;
    v[static_cast<std::size_t>(t.index_of("/Hate/Target_of_hate/Religion_or_belief"))] = 0.7;
    LabelVector closed = close_upward(t, v);
    EXPECT_EQ(closed[static_cast<std::size_t>(t.index_of(kJews))], 0.4);
    EXPECT_EQ(closed[static_cast<std::size_t>(t.index_of("/Hate/Target_of_hate/Religion_or_belief"))], 0.7);
    EXPECT_EQ(closed[static_cast<std::size_t>(t.index_of("/Hate/Target_of_hate"))], 0.7);
    EXPECT_EQ(closed[static_cast<std::size_t>(t.index_of("/Hate"))], 0.7);
}

TEST(CloseUpward, IdempotentAndMonotone) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    Rng rng(17);
    for (int round = 0; round < 200; ++round) {
        LabelVector v = testutil::random_scores(t, rng);
        LabelVector once = close_upward(t, v);
        EXPECT_EQ(close_upward(t, once), once);
        // Monotone: bump a few coordinates, closure may only rise.
        LabelVector w = v;
        for (int k = 0; k < 5; ++k) {
            std::size_t i = rng.bounded(w.size());
            w[i] = std::min(1.0, w[i] + rng.next_unit() * (1.0 - w[i]));
        }
        LabelVector closed_w = close_upward(t, w);
        for (std::size_t i = 0; i < w.size(); ++i) {
            EXPECT_GE(closed_w[i], once[i] - 1e-15);
        }
    }
}

TEST(CloseUpward, LengthMismatchFails) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    try {
        close_upward(t, LabelVector{0.5});
        FAIL() << "expected LENGTH_MISMATCH";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::LengthMismatch);
    }
}

TEST(Decode, RoundTripEqualsClosure) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    Rng rng(23);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::string> labels = testutil::random_label_set(t, rng, 4);
        std::set<std::string> expected = closure_oracle(t, labels);
        for (double theta : {0.1, 0.5, 0.9, 1.0}) {
            EXPECT_EQ(decode(t, encode(t, labels), theta), expected);
        }
    }
}

TEST(Decode, ClosureLiftsPartialScores) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v(static_cast<std::size_t>(t.node_count()), 0.0);
    v[static_cast<std::size_t>(t.index_of("/Hate"))] = 0.6;
    v[static_cast<std::size_t>(t.index_of("/Hate/Target_of_hate"))] = 0.2;
    v[static_cast<std::size_t>(t.index_of(kJews))] = 0.7;
    std::set<std::string> expected{"/Hate", "/Hate/Target_of_hate",
                                   "/Hate/Target_of_hate/Religion_or_belief", kJews};
    EXPECT_EQ(decode(t, v, 0.5), expected);
}

TEST(Decode, AllZerosDecodesEmpty) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    LabelVector v(static_cast<std::size_t>(t.node_count()), 0.0);
    EXPECT_TRUE(decode(t, v, 0.5).empty());
}

TEST(Decode, OutputAlwaysAncestorClosed) {
    Taxonomy t = load_fixture_taxonomy("general_v1a.tax");
    Rng rng(29);
    for (int round = 0; round < 200; ++round) {
        LabelVector v = testutil::random_scores(t, rng);
        std::set<std::string> out = decode(t, v, 0.5);
        for (const std::string& p : out) {
            for (const std::string& a : t.ancestors(p)) {
                EXPECT_TRUE(out.count(a)) << "missing ancestor " << a << " of " << p;
            }
        }
    }
}
