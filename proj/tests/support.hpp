#pragma once

// Helpers shared by the unit tests and the acceptance binary: sampling of
// subgroup elements, relator-based rewriting of words, and an independent
// brute-force intersection for right-angled graphs.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "artin/artin.hpp"
#include "artin/testkit.hpp"

namespace artin::support {

/// Every defining relator of the graph, oriented both ways.
inline std::vector<Word> relators(const ArtinGraph& graph) {
  std::vector<Word> out;
  for (std::uint32_t i = 0; i < graph.size(); ++i)
    for (std::uint32_t j = i + 1; j < graph.size(); ++j)
      if (int m = graph.label(vertex(i), vertex(j))) {
        Word r = artin_relator(graph.tag(), vertex(i), vertex(j), m);
        out.push_back(r);
        out.push_back(r.inverse());
      }
  return out;
}

/// Inserts a conjugated relator at a random position; the group element is
/// unchanged but the letters may leave the original alphabet.
inline Word disguise(std::mt19937_64& rng, const ArtinGraph& graph, const Word& w, int rounds = 1,
                     std::size_t conj_len = 2) {
  auto rels = relators(graph);
  if (rels.empty()) return w;
  Word out = w;
  for (int r = 0; r < rounds; ++r) {
    std::vector<Syllable> syl = out.syllables();
    std::uniform_int_distribution<std::size_t> pos(0, syl.size());
    std::uniform_int_distribution<std::size_t> which(0, rels.size() - 1);
    std::size_t p = pos(rng);
    Word left = Word::from_syllables(graph.tag(), {syl.begin(), syl.begin() + p});
    Word right = Word::from_syllables(graph.tag(), {syl.begin() + p, syl.end()});
    Word c = testkit::random_word(rng, graph, conj_len);
    out = left * conjugate(rels[which(rng)], c) * right;
  }
  return out;
}

/// Pair (u, v) of words of at most max_len letters that are equal in the
/// group: u = p s1 t and v = p s2^-1 t for a rotated relator s1 s2.
inline std::pair<Word, Word> equal_pair(std::mt19937_64& rng, const ArtinGraph& graph, std::size_t max_len) {
  auto rels = relators(graph);
  if (rels.empty()) {
    Word u = testkit::random_word(rng, graph, max_len);
    return {u, u};
  }
  std::uniform_int_distribution<std::size_t> which(0, rels.size() - 1);
  for (;;) {
    const Word& r = rels[which(rng)];
    std::vector<int> letters;
    for (const auto& s : r.syllables())
      for (std::int64_t i = 0; i < std::llabs(s.exp); ++i)
        letters.push_back(s.exp > 0 ? static_cast<int>(index_of(s.gen)) + 1 : -static_cast<int>(index_of(s.gen)) - 1);
    std::uniform_int_distribution<std::size_t> rot(0, letters.size() - 1);
    std::rotate(letters.begin(), letters.begin() + rot(rng), letters.end());
    std::uniform_int_distribution<std::size_t> cut(1, letters.size() - 1);
    std::size_t j = cut(rng);
    auto to_word = [&](std::vector<int>::const_iterator b, std::vector<int>::const_iterator e) {
      Word w(graph.tag());
      for (auto it = b; it != e; ++it) w.push(vertex(static_cast<std::uint32_t>(std::abs(*it) - 1)), *it > 0 ? 1 : -1);
      return w;
    };
    Word s1 = to_word(letters.begin(), letters.begin() + j);
    Word s2 = to_word(letters.begin() + j, letters.end());
    std::size_t longest = static_cast<std::size_t>(std::max(s1.length(), s2.length()));
    if (longest > max_len) continue;
    std::size_t room = max_len - longest;
    Word p = testkit::random_word(rng, graph, room / 2);
    Word t = testkit::random_word(rng, graph, room - static_cast<std::size_t>(p.length()));
    Word u = p * s1 * t, v = p * s2.inverse() * t;
    if (static_cast<std::size_t>(u.length()) <= max_len && static_cast<std::size_t>(v.length()) <= max_len)
      return {u, v};
  }
}

/// A mixed sample of candidate elements for membership comparisons: random
/// elements of each listed parabolic (some disguised) and plain random words.
inline std::vector<Word> membership_sample(std::mt19937_64& rng, const ArtinGraph& graph,
                                           const std::vector<ParabolicSubgroup>& from, std::size_t count,
                                           std::size_t max_len) {
  std::vector<Word> out;
  std::uniform_int_distribution<std::size_t> kind(0, from.size());
  std::bernoulli_distribution hide(0.3);
  while (out.size() < count) {
    std::size_t k = kind(rng);
    Word w = k < from.size() ? testkit::random_element(rng, graph, from[k], max_len) : testkit::random_word(rng, graph, max_len);
    if (hide(rng)) w = disguise(rng, graph, w);
    out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Right-angled brute force: G_A & g G_B g^-1 in a graph whose labels are all
// 2, via a shortest (A, B) double coset representative.
// ---------------------------------------------------------------------------

using Letters = std::vector<int>;  // +-(i+1)

inline Letters raag_letters(const Word& w) {
  Letters out;
  for (const auto& s : w.syllables())
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i)
      out.push_back(s.exp > 0 ? static_cast<int>(index_of(s.gen)) + 1 : -static_cast<int>(index_of(s.gen)) - 1);
  return out;
}

inline bool raag_commute(const ArtinGraph& graph, int l, int m) {
  return graph.commute(vertex(static_cast<std::uint32_t>(std::abs(l) - 1)),
                       vertex(static_cast<std::uint32_t>(std::abs(m) - 1)));
}

/// Cancels u ... u^-1 pairs whose interior commutes with u, until none remain.
inline Letters raag_reduce(const ArtinGraph& graph, Letters w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j] == -w[i]) {
          w.erase(w.begin() + j);
          w.erase(w.begin() + i);
          changed = true;
          break;
        }
        if (std::abs(w[j]) == std::abs(w[i]) || !raag_commute(graph, w[i], w[j])) break;
      }
  }
  return w;
}

struct RaagIntersection {
  Word conjugator;  // over A
  VertexSet support;
};

/// G_A & g G_B g^-1 = a G_S a^-1 where g = a g0 b with a in G_A, b in G_B
/// and g0 admitting no letter of A movable to its front nor of B to its back;
/// S = A & B & {v not in supp(g0) commuting with every letter of g0}.
inline RaagIntersection raag_intersection(const ArtinGraph& graph, const VertexSet& a_set, const Word& g,
                                          const VertexSet& b_set) {
  auto in = [](const VertexSet& s, int l) { return s.contains(vertex(static_cast<std::uint32_t>(std::abs(l) - 1))); };
  Letters w = raag_reduce(graph, raag_letters(g));
  Letters front;
  for (bool changed = true; changed;) {
    changed = false;
    w = raag_reduce(graph, w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!in(a_set, w[i])) continue;
      bool movable = true;
      for (std::size_t j = 0; j < i; ++j)
        if (!raag_commute(graph, w[i], w[j])) movable = false;
      if (!movable) continue;
      front.push_back(w[i]);
      w.erase(w.begin() + i);
      changed = true;
      break;
    }
    for (std::size_t i = w.size(); i-- > 0 && !changed;) {
      if (!in(b_set, w[i])) continue;
      bool movable = true;
      for (std::size_t j = i + 1; j < w.size(); ++j)
        if (!raag_commute(graph, w[i], w[j])) movable = false;
      if (!movable) continue;
      w.erase(w.begin() + i);
      changed = true;
    }
  }
  VertexSet s;
  for (VertexId v : a_set & b_set) {
    bool ok = true;
    for (int l : w) {
      VertexId u = vertex(static_cast<std::uint32_t>(std::abs(l) - 1));
      if (u == v || !graph.commute(u, v)) ok = false;
    }
    if (ok) s.insert(v);
  }
  Word a(graph.tag());
  for (int l : front) a.push(vertex(static_cast<std::uint32_t>(std::abs(l) - 1)), l > 0 ? 1 : -1);
  return {a, s};
}

}  // namespace artin::support
