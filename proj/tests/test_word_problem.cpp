#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "artin/artin.hpp"
#include "artin/testkit.hpp"
#include "support.hpp"

namespace {

using namespace artin;
using testkit::Verdict;

std::shared_ptr<const ArtinGraph> path() { return make_graph({"a", "x", "b"}, {{"a", "x", 4}, {"x", "b", 2}}); }

TEST(IsTrivial, PathExamples) {
  auto g = path();
  ArtinGroup group(g);
  EXPECT_TRUE(group.is_trivial(group.parse("b x b^-1 x^-1")));
  Word w = group.parse("a b a^-1 b^-1");
  EXPECT_FALSE(group.is_trivial(w));
  EXPECT_EQ(testkit::oracle_equal(*g, w, group.identity(), 8), Verdict::False);
  EXPECT_TRUE(group.is_trivial(group.identity()));
}

TEST(IsEqual, DihedralExamples) {
  auto g = make_graph({"a", "x"}, {{"a", "x", 4}});
  ArtinGroup group(g);
  EXPECT_TRUE(group.is_equal(group.parse("a x a x"), group.parse("x a x a")));
  Word ax = group.parse("a x"), xa = group.parse("x a");
  EXPECT_FALSE(group.is_equal(ax, xa));
  EXPECT_EQ(testkit::oracle_equal(*g, ax, xa, 8), Verdict::False);
  Word any = group.parse("a^3 x^-2 a");
  EXPECT_TRUE(group.is_equal(any, any));
}

TEST(InStandardParabolic, Examples) {
  auto commuting = make_graph({"a", "x"}, {{"a", "x", 2}});
  ArtinGroup g2(commuting);
  EXPECT_TRUE(g2.in_standard_parabolic(g2.parse("x a x^-1"), VertexSet{commuting->at("a")}));

  auto dihedral = make_graph({"a", "x"}, {{"a", "x", 4}});
  ArtinGroup g4(dihedral);
  Word w = g4.parse("x a x^-1");
  EXPECT_FALSE(g4.in_standard_parabolic(w, VertexSet{dihedral->at("a")}));
  EXPECT_EQ(testkit::oracle_equal(*dihedral, w, g4.parse("a"), 8), Verdict::False);
  EXPECT_TRUE(g4.in_standard_parabolic(g4.parse("a^3 a^-7"), VertexSet{dihedral->at("a")}));
}

TEST(AmalgamReduce, ElementOfTheAmalgamatedSubgroupIsOneBlock) {
  auto g = path();
  ArtinGroup group(g);
  auto f = group.amalgam_reduce(g->at("a"), group.parse("x^3"));
  ASSERT_EQ(f.blocks.size(), 1u);
  EXPECT_EQ(f.blocks[0].tag, BlockTag::InZ);
  EXPECT_EQ(f.geodesic_length(), 0u);
}

TEST(AmalgamReduce, PathSplitAtA) {
  auto g = path();
  ArtinGroup group(g);
  Word w = group.parse("b a b^-1");
  auto f = group.amalgam_reduce(g->at("a"), w);
  ASSERT_EQ(f.blocks.size(), 3u);
  EXPECT_EQ(f.blocks[0].tag, BlockTag::InY);
  EXPECT_EQ(f.blocks[1].tag, BlockTag::InX);
  EXPECT_EQ(f.blocks[2].tag, BlockTag::InY);
  EXPECT_TRUE(group.is_equal(f.product(g->tag()), w));
  // No block lies in G_{x}: each is separated from every power of x by the oracle.
  for (const auto& b : f.blocks)
    for (int e = -3; e <= 3; ++e)
      EXPECT_EQ(testkit::oracle_equal(*g, b.word, group.letter(g->at("x"), e), 8), Verdict::False);
}

TEST(AmalgamReduce, TrailingAmalgamatedFactorIsAbsorbed) {
  auto g = path();
  ArtinGroup group(g);
  auto f = group.amalgam_reduce(g->at("a"), group.parse("a x a^-1 x^2"));
  ASSERT_EQ(f.blocks.size(), 1u);
  EXPECT_EQ(f.blocks[0].tag, BlockTag::InX);
}

TEST(AmalgamReduce, FullStarIsRejected) {
  auto g = path();
  ArtinGroup group(g);
  try {
    group.amalgam_reduce(g->at("x"), group.parse("a b"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StarIsFull);
  }
}

TEST(WordProblemProperties, AgreesWithTheOracleOnSmallGraphs) {
  std::mt19937_64 rng(41);
  int decisive = 0;
  for (int i = 0; i < 400; ++i) {
    auto g = testkit::random_graph(rng, 3, {2, 4, 6});
    ArtinGroup group(g);
    auto [u, v] = i % 2 ? support::equal_pair(rng, *g, 6)
                        : std::pair{testkit::random_word(rng, *g, 6), testkit::random_word(rng, *g, 6)};
    Verdict oracle = testkit::oracle_equal(*g, u, v, 6);
    if (oracle == Verdict::Unknown) continue;
    ++decisive;
    EXPECT_EQ(group.is_equal(u, v), oracle == Verdict::True)
        << format_graph_text(*g) << format_word(*g, u) << " vs " << format_word(*g, v);
  }
  EXPECT_GT(decisive, 300);
}

TEST(WordProblemProperties, RelatorsAreTrivial) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    auto g = testkit::random_graph(rng, 6, {2, 4, 6, 8});
    ArtinGroup group(g);
    for (const Word& r : support::relators(*g)) EXPECT_TRUE(group.is_trivial(r));
    Word w = testkit::random_word(rng, *g, 8);
    EXPECT_TRUE(group.is_equal(support::disguise(rng, *g, w, 3), w)) << format_graph_text(*g);
  }
}

TEST(WordProblemProperties, EqualWordsHaveEqualQuotientImages) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    auto g = testkit::random_graph(rng, 5, {2, 4, 6});
    ArtinGroup group(g);
    Word u = testkit::random_word(rng, *g, 8);
    Word v = i % 2 ? support::disguise(rng, *g, u, 2) : testkit::random_word(rng, *g, 8);
    if (!group.is_equal(u, v)) continue;
    for (VertexId s : g->vertices()) EXPECT_EQ(exponent_sum(u, s), exponent_sum(v, s));
    for (VertexId s : g->vertices())
      for (VertexId t : g->vertices()) {
        if (index_of(s) >= index_of(t)) continue;
        VertexSet pair{s, t};
        Word pu = retraction_image(u, pair), pv = retraction_image(v, pair);
        int m = g->label(s, t);
        if (m == 0)
          EXPECT_EQ(pu, pv);
        else
          EXPECT_EQ(dihedral_reduce(m / 2, pu, s, t), dihedral_reduce(m / 2, pv, s, t));
      }
  }
}

TEST(WordProblemProperties, AmalgamFactorizationIsStable) {
  std::mt19937_64 rng(44);
  int split = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = testkit::random_graph(rng, 5, {2, 4, 6}, 0.5, 2);
    auto s = amalgam_split(*g);
    if (!s) continue;
    ++split;
    ArtinGroup group(g);
    Word w = support::disguise(rng, *g, testkit::random_word(rng, *g, 10));
    auto f = group.amalgam_reduce(s->x, w);
    Word product = f.product(g->tag());
    EXPECT_TRUE(group.is_equal(product, w));
    EXPECT_EQ(group.amalgam_reduce(s->x, product).blocks.size(), f.blocks.size());
    for (std::size_t b = 0; b + 1 < f.blocks.size(); ++b) EXPECT_NE(f.blocks[b].tag, f.blocks[b + 1].tag);
  }
  EXPECT_GT(split, 50);
}

TEST(WordProblemProperties, SharedInstanceIsThreadSafe) {
  auto g = make_graph({"a", "b", "x"}, {{"a", "x", 4}, {"b", "x", 2}, {"a", "b", 2}});
  ArtinGroup group(g);
  std::vector<std::thread> threads;
  std::vector<int> wrong(4, 0);
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(100 + t);
      for (int i = 0; i < 200; ++i) {
        Word w = testkit::random_word(rng, *g, 8);
        if (!group.is_trivial(w * w.inverse())) ++wrong[t];
        if (!group.is_equal(support::disguise(rng, *g, w), w)) ++wrong[t];
      }
    });
  for (auto& t : threads) t.join();
  for (int n : wrong) EXPECT_EQ(n, 0);
}

}  // namespace
