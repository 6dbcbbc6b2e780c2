#include <gtest/gtest.h>

#include <random>

#include "artin/artin.hpp"
#include "artin/testkit.hpp"
#include "support.hpp"

namespace {

using namespace artin;
using testkit::Verdict;

TEST(Oracle, RelatorInstanceIsEqual) {
  auto g = make_graph({"a", "b", "c"}, {{"a", "b", 4}, {"b", "c", 2}});
  Word r = artin_relator(g->tag(), g->at("a"), g->at("b"), 4);
  EXPECT_EQ(testkit::oracle_equal(*g, r, Word(g->tag()), 8), Verdict::True);
  Word u = parse_word(*g, "c a b a b c^-1");
  Word v = parse_word(*g, "c b a b a c^-1");
  EXPECT_EQ(testkit::oracle_equal(*g, u, v, 8), Verdict::True);
}

TEST(Oracle, DifferentExponentSumsAreSeparated) {
  auto g = make_graph({"a", "b", "c"}, {{"a", "b", 4}, {"b", "c", 2}});
  EXPECT_EQ(testkit::oracle_equal(*g, parse_word(*g, "a b"), parse_word(*g, "a c"), 8), Verdict::False);
}

TEST(Oracle, CommutatorInTheDihedralGroup) {
  auto g = make_graph({"a", "b"}, {{"a", "b", 4}});
  EXPECT_EQ(testkit::oracle_equal(*g, parse_word(*g, "a b a^-1 b^-1"), Word(g->tag()), 8), Verdict::False);
}

TEST(Oracle, BudgetGivesUnknownOrThrows) {
  // Equal words that differ by a long relator detour on three vertices.
  auto g = make_graph({"a", "b", "c"}, {{"a", "b", 8}, {"b", "c", 2}});
  Word u = parse_word(*g, "c a b a b a b a b c^-1");
  Word v = parse_word(*g, "c b a b a b a b a c^-1");
  testkit::OracleOptions tiny;
  tiny.node_budget = 1;
  EXPECT_EQ(testkit::oracle_equal(*g, u, v, 10, tiny), Verdict::Unknown);
  tiny.throw_on_budget = true;
  EXPECT_THROW(testkit::oracle_equal(*g, u, v, 10, tiny), Error);
  EXPECT_EQ(testkit::oracle_equal(*g, u, v, 10), Verdict::True);
}

TEST(Oracle, NeverContradictsTheSolver) {
  std::mt19937_64 rng(81);
  std::size_t agree = 0, unknown = 0;
  for (int i = 0; i < 400; ++i) {
    auto g = testkit::random_graph(rng, 4, {2, 4, 6});
    ArtinGroup group(g);
    auto [u, v] = i % 2 ? support::equal_pair(rng, *g, 7)
                        : std::pair{testkit::random_word(rng, *g, 7), testkit::random_word(rng, *g, 7)};
    Verdict oracle = testkit::oracle_equal(*g, u, v, 7);
    if (oracle == Verdict::Unknown) {
      ++unknown;
      continue;
    }
    EXPECT_EQ(group.is_equal(u, v), oracle == Verdict::True);
    ++agree;
  }
  RecordProperty("agree", static_cast<int>(agree));
  RecordProperty("unknown", static_cast<int>(unknown));
  EXPECT_GT(agree, 300u);
}

TEST(Generators, FixedSeedsAreReproducible) {
  auto g1 = testkit::random_graph(std::uint64_t{5}, 5, {2, 4, 6});
  auto g2 = testkit::random_graph(std::uint64_t{5}, 5, {2, 4, 6});
  EXPECT_EQ(format_graph_text(*g1), format_graph_text(*g2));
  EXPECT_EQ(format_word(*g1, testkit::random_word(std::uint64_t{9}, *g1, 10)),
            format_word(*g2, testkit::random_word(std::uint64_t{9}, *g2, 10)));
  auto p1 = testkit::random_parabolic(std::uint64_t{3}, *g1);
  auto p2 = testkit::random_parabolic(std::uint64_t{3}, *g2);
  EXPECT_EQ(p1.format(*g1), p2.format(*g2));
}

TEST(Generators, LabelPoolOfTwoGivesRightAngledGraphs) {
  std::mt19937_64 rng(82);
  for (int i = 0; i < 50; ++i) {
    auto g = testkit::random_graph(rng, 5, {2});
    for (const auto& e : g->raw().edges) EXPECT_EQ(e.label, 2);
  }
}

TEST(Generators, SingleVertexGraphs) {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 20; ++i) {
    auto g = testkit::random_graph(rng, 1, {2, 4});
    EXPECT_EQ(g->size(), 1u);
    EXPECT_TRUE(g->raw().edges.empty());
  }
}

TEST(Generators, GraphsAreValidAndWordsRespectBounds) {
  std::mt19937_64 rng(84);
  for (int i = 0; i < 100; ++i) {
    auto g = testkit::random_graph(rng, 6, {2, 4, 6, 8});
    EXPECT_TRUE(ArtinGraph::validate(g->raw()).ok());
    EXPECT_LE(testkit::random_word(rng, *g, 7).length(), 7);
    Word r = testkit::random_reduced_word(rng, *g, 5, g->vertices());
    EXPECT_EQ(r.length(), 5);
  }
  EXPECT_THROW(testkit::random_graph(rng, 3, {3}), Error);
}

TEST(Support, RightAngledBruteForceOnAKnownCase) {
  // Path a - b - c, all labels 2: G_{a,c} & b G_{a,c} b^-1 = G_{a,c} since b is central there.
  auto g = make_graph({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 2}});
  VertexSet ac{g->at("a"), g->at("c")};
  auto r = support::raag_intersection(*g, ac, parse_word(*g, "b"), ac);
  EXPECT_EQ(r.support, ac);
  // G_{a} & c G_{a} c^-1 is trivial since a and c do not commute.
  auto t = support::raag_intersection(*g, VertexSet{g->at("a")}, parse_word(*g, "c"), VertexSet{g->at("a")});
  EXPECT_TRUE(t.support.empty());
  // Letters of A in front of g are absorbed into the conjugator.
  auto s = support::raag_intersection(*g, ac, parse_word(*g, "a c b"), ac);
  EXPECT_EQ(s.support, ac);
  EXPECT_EQ(format_word(*g, s.conjugator), "a c");
}

}  // namespace
