#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "artin/error.hpp"
#include "artin/graph.hpp"
#include "artin/parabolic.hpp"
#include "artin/word.hpp"

namespace artin::testkit {

// ---------------------------------------------------------------------------
// Brute-force equality oracle. It shares only the graph and word types with
// the solver: separation uses quotient invariants and retractions, and
// equality is established by searching relator rewritings in a length band.
// ---------------------------------------------------------------------------

enum class Verdict { True, False, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct OracleOptions {
  std::size_t node_budget = 200'000;  // words visited by the rewriting search
  bool throw_on_budget = false;        // raise BudgetExceeded instead of Unknown
};

namespace detail {

/// Letters are +(i+1) and -(i+1) for generator i.
using Letters = std::vector<int>;

inline Letters letters_of(const Word& w) {
  Letters out;
  for (const auto& s : w.syllables()) {
    int l = static_cast<int>(index_of(s.gen)) + 1;
    for (std::int64_t i = 0; i < std::llabs(s.exp); ++i) out.push_back(s.exp > 0 ? l : -l);
  }
  return out;
}

inline Letters reduce(const Letters& in) {
  Letters out;
  for (int l : in) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Letters invert(const Letters& in) {
  Letters out(in.rbegin(), in.rend());
  for (int& l : out) l = -l;
  return out;
}

inline Letters restrict_to(const Letters& in, const std::vector<char>& keep) {
  Letters out;
  for (int l : in)
    if (keep[std::abs(l) - 1]) out.push_back(l);
  return reduce(out);
}

/// Image in Z * Z_k of a word over {p, q} with label 2k, using d = q p and
/// p = q^-1 d (so d^k is central and is killed), paired with the total
/// exponent sum, which recovers the central part.
inline std::pair<std::vector<std::pair<int, std::int64_t>>, std::int64_t> free_product_image(const Letters& w, int p,
                                                                                          int q, std::int64_t k) {
  // Syllables (0, e): q^e in Z; (1, r): d^r with 0 < r < k.
  std::vector<std::pair<int, std::int64_t>> st;
  auto push = [&](int kind, std::int64_t e) {
    if (!st.empty() && st.back().first == kind) {
      e += st.back().second;
      st.pop_back();
    }
    if (kind == 1) e = ((e % k) + k) % k;
    if (e != 0) st.push_back({kind, e});
  };
  std::int64_t degree = 0;
  for (int l : w) {
    degree += l > 0 ? 1 : -1;
    if (std::abs(l) == q) {
      push(0, l > 0 ? 1 : -1);
    } else if (std::abs(l) == p) {
      if (l > 0) {
        push(0, -1);
        push(1, 1);
      } else {
        push(1, -1);
        push(0, 1);
      }
    }
  }
  return {st, degree};
}

struct LettersHash {
  std::size_t operator()(const Letters& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int l : w) h = (h ^ static_cast<std::size_t>(l + 1024)) * 0x100000001b3ULL;
    return h;
  }
};

class Oracle {
 public:
  Oracle(const ArtinGraph& graph, OracleOptions opts) : graph_(graph), opts_(opts) {
    for (std::uint32_t i = 0; i < graph.size(); ++i)
      for (std::uint32_t j = i + 1; j < graph.size(); ++j)
        if (int m = graph.label(vertex(i), vertex(j))) {
          Letters r;
          for (int t = 0; t < m; ++t) r.push_back(static_cast<int>(t % 2 == 0 ? i : j) + 1);
          for (int t = m - 1; t >= 0; --t) r.push_back(-(static_cast<int>(t % 2 == 0 ? j : i) + 1));
          add_relator(r);
          add_relator(invert(r));
          max_relator_ = std::max<std::size_t>(max_relator_, r.size());
        }
  }

  Verdict equal(const Letters& u, const Letters& v, std::size_t radius) {
    Letters ru = reduce(u), rv = reduce(v);
    if (ru == rv) return Verdict::True;
    const std::size_t n = graph_.size();
    VertexSet all = graph_.vertices();
    if (separated(ru, rv, all)) return Verdict::False;
    if (n <= 2) return Verdict::True;  // the invariants are complete on two generators
    for (std::uint32_t i = 0; i < n; ++i)
      if (separated_recursive(ru, rv, all.without(vertex(i)), radius)) return Verdict::False;
    return search(ru, rv, radius);
  }

 private:
  void add_relator(const Letters& r) {
    for (std::size_t s = 0; s < r.size(); ++s) {
      Letters rot(r.begin() + s, r.end());
      rot.insert(rot.end(), r.begin(), r.begin() + s);
      rotations_.push_back(rot);
    }
  }

  /// Exponent sums and the images under every two-generator retraction.
  bool separated(const Letters& u, const Letters& v, const VertexSet& view) const {
    const std::size_t n = graph_.size();
    std::vector<std::int64_t> eu(n, 0), ev(n, 0);
    for (int l : u) eu[std::abs(l) - 1] += l > 0 ? 1 : -1;
    for (int l : v) ev[std::abs(l) - 1] += l > 0 ? 1 : -1;
    if (eu != ev) return true;
    const auto& items = view.items();
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        std::vector<char> keep(n, 0);
        keep[index_of(items[i])] = keep[index_of(items[j])] = 1;
        Letters pu = restrict_to(u, keep), pv = restrict_to(v, keep);
        int m = graph_.label(items[i], items[j]);
        if (m == 0) {
          if (pu != pv) return true;
        } else if (m > 2) {
          int p = static_cast<int>(index_of(items[i])) + 1, q = static_cast<int>(index_of(items[j])) + 1;
          if (free_product_image(pu, p, q, m / 2) != free_product_image(pv, p, q, m / 2)) return true;
        }
      }
    return false;
  }

  /// Retract to `view` and decide there with a sub-oracle.
  bool separated_recursive(const Letters& u, const Letters& v, const VertexSet& view, std::size_t radius) {
    auto keep = view.mask(graph_.size());
    Letters pu = restrict_to(u, keep), pv = restrict_to(v, keep);
    if (pu == pv) return false;
    if (separated(pu, pv, view)) return true;
    if (view.size() <= 2) return false;  // the invariants are complete here, so pu = pv in G_view
    for (VertexId w : view)
      if (separated_recursive(pu, pv, view.without(w), radius)) return true;
    return false;
  }

  /// Bidirectional breadth-first search over relator substitutions, keeping
  /// every word within radius + longest relator letters.
  Verdict search(const Letters& u, const Letters& v, std::size_t radius) {
    const std::size_t band = std::max({radius, u.size(), v.size()}) + max_relator_;
    std::unordered_map<Letters, int, LettersHash> seen;  // 1 from u, 2 from v
    std::deque<Letters> qu{u}, qv{v};
    seen[u] = 1;
    seen[v] = 2;
    std::size_t visited = 0;
    while (!qu.empty() || !qv.empty()) {
      for (int side : {1, 2}) {
        auto& q = side == 1 ? qu : qv;
        std::size_t layer = q.size();
        for (std::size_t t = 0; t < layer; ++t) {
          Letters w = std::move(q.front());
          q.pop_front();
          for (auto& next : neighbours(w, band)) {
            auto [it, inserted] = seen.emplace(next, side);
            if (!inserted) {
              if (it->second != side) return Verdict::True;
              continue;
            }
            if (++visited > opts_.node_budget) {
              if (opts_.throw_on_budget) fail(ErrorKind::BudgetExceeded, "oracle search budget exhausted");
              return Verdict::Unknown;
            }
            q.push_back(std::move(next));
          }
        }
      }
    }
    return Verdict::Unknown;
  }

  /// Replace a prefix p of a rotated relator p s found in w by s^-1.
  std::vector<Letters> neighbours(const Letters& w, std::size_t band) const {
    std::vector<Letters> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
      for (const auto& r : rotations_)
        for (std::size_t j = 1; j <= r.size() && i + j <= w.size() + 0; ++j) {
          if (w[i + j - 1] != r[j - 1]) break;
          Letters next(w.begin(), w.begin() + i);
          for (std::size_t t = r.size(); t > j; --t) next.push_back(-r[t - 1]);
          next.insert(next.end(), w.begin() + i + j, w.end());
          next = reduce(next);
          if (next.size() <= band) out.push_back(std::move(next));
        }
    return out;
  }

  const ArtinGraph& graph_;
  OracleOptions opts_;
  std::vector<Letters> rotations_;
  std::size_t max_relator_ = 0;
};

}  // namespace detail

/// Three-valued equality test. `radius` bounds the word length of the
/// rewriting search (it is raised to the input lengths when smaller).
inline Verdict oracle_equal(const ArtinGraph& graph, const Word& u, const Word& v, std::size_t radius,
                            OracleOptions opts = {}) {
  detail::Oracle oracle(graph, opts);
  return oracle.equal(detail::letters_of(u), detail::letters_of(v), radius);
}

// ---------------------------------------------------------------------------
// Random generators. Everything is driven by std::mt19937_64 so a seed fixes
// the output.
// ---------------------------------------------------------------------------

inline std::string vertex_label(std::size_t i) {
  std::string s(1, static_cast<char>('a' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

/// Uniform vertex count in [1, max_vertices], each pair joined with
/// probability edge_probability and labelled from the pool; graphs failing the
/// triangle criterion are rejected and redrawn.
inline std::shared_ptr<const ArtinGraph> random_graph(std::mt19937_64& rng, std::size_t max_vertices,
                                                      const std::vector<int>& label_pool,
                                                      double edge_probability = 0.5, std::size_t min_vertices = 1) {
  require(!label_pool.empty() && max_vertices >= min_vertices && min_vertices >= 1, ErrorKind::PreconditionFailed,
          "bad random_graph parameters");
  for (int m : label_pool)
    require(m >= 2 && m % 2 == 0, ErrorKind::PreconditionFailed, "label pool must hold even labels >= 2");
  std::uniform_int_distribution<std::size_t> count(min_vertices, max_vertices);
  std::uniform_int_distribution<std::size_t> pick(0, label_pool.size() - 1);
  std::bernoulli_distribution edge(edge_probability);
  for (;;) {
    std::size_t n = count(rng);
    RawGraph raw;
    for (std::size_t i = 0; i < n; ++i) raw.vertices.push_back(vertex_label(i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (edge(rng)) raw.edges.push_back({raw.vertices[i], raw.vertices[j], label_pool[pick(rng)], 0});
    auto result = ArtinGraph::validate(raw);
    if (result.ok()) return result.graph;
  }
}

inline std::shared_ptr<const ArtinGraph> random_graph(std::uint64_t seed, std::size_t max_vertices,
                                                      const std::vector<int>& label_pool) {
  std::mt19937_64 rng(seed);
  return random_graph(rng, max_vertices, label_pool);
}

/// Letters drawn uniformly from the generators in `over` and their inverses,
/// with a uniform letter count in [0, max_len], then freely reduced.
inline Word random_word(std::mt19937_64& rng, const ArtinGraph& graph, std::size_t max_len, const VertexSet& over) {
  Word w(graph.tag());
  if (over.empty()) return w;
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> gen(0, over.size() - 1);
  std::bernoulli_distribution sign(0.5);
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.push(over.items()[gen(rng)], sign(rng) ? 1 : -1);
  return w;
}

inline Word random_word(std::mt19937_64& rng, const ArtinGraph& graph, std::size_t max_len) {
  return random_word(rng, graph, max_len, graph.vertices());
}

inline Word random_word(std::uint64_t seed, const ArtinGraph& graph, std::size_t max_len) {
  std::mt19937_64 rng(seed);
  return random_word(rng, graph, max_len);
}

/// Exactly `len` letters without immediate cancellation.
inline Word random_reduced_word(std::mt19937_64& rng, const ArtinGraph& graph, std::size_t len, const VertexSet& over) {
  Word w(graph.tag());
  if (over.empty()) return w;
  std::uniform_int_distribution<std::size_t> gen(0, over.size() - 1);
  std::bernoulli_distribution sign(0.5);
  while (static_cast<std::size_t>(w.length()) < len) {
    VertexId v = over.items()[gen(rng)];
    int e = sign(rng) ? 1 : -1;
    if (!w.empty() && w.syllables().back().gen == v && (w.syllables().back().exp > 0) != (e > 0)) continue;
    w.push(v, e);
  }
  return w;
}

inline VertexSet random_subset(std::mt19937_64& rng, const VertexSet& of) {
  std::bernoulli_distribution in(0.5);
  VertexSet s;
  for (VertexId v : of)
    if (in(rng)) s.insert(v);
  return s;
}

inline ParabolicSubgroup random_parabolic(std::mt19937_64& rng, const ArtinGraph& graph, std::size_t max_conj_len = 6) {
  VertexSet support = random_subset(rng, graph.vertices());
  return ParabolicSubgroup(random_word(rng, graph, max_conj_len), support);
}

inline ParabolicSubgroup random_parabolic(std::uint64_t seed, const ArtinGraph& graph) {
  std::mt19937_64 rng(seed);
  return random_parabolic(rng, graph);
}

/// g w g^-1 for a random word w over the support of P.
inline Word random_element(std::mt19937_64& rng, const ArtinGraph& graph, const ParabolicSubgroup& p,
                           std::size_t max_len) {
  return conjugate(random_word(rng, graph, max_len, p.support()), p.conjugator());
}

}  // namespace artin::testkit
