#pragma once

#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/graph.hpp"
#include "artin/word.hpp"
#include "artin/word_problem.hpp"

namespace artin {

/// The parabolic subgroup g G_S g^-1. The conjugator is kept canonical in the
/// weak sense rho_S(g) = 1, obtained by right-multiplying with rho_S(g)^-1.
class ParabolicSubgroup {
 public:
  ParabolicSubgroup() = default;
  ParabolicSubgroup(Word conjugator, VertexSet support) : support_(std::move(support)) {
    conj_ = conjugator * retraction_image(conjugator, support_).inverse();
  }

  static ParabolicSubgroup standard(const ArtinGroup& group, VertexSet support) {
    group.graph().check(support);
    return ParabolicSubgroup(group.identity(), std::move(support));
  }

  const Word& conjugator() const noexcept { return conj_; }
  const VertexSet& support() const noexcept { return support_; }
  GraphTag tag() const noexcept { return conj_.tag(); }

  /// Conjugated generators g s g^-1 for s in the support.
  std::vector<Word> generators(GraphTag tag) const {
    std::vector<Word> out;
    for (VertexId s : support_) out.push_back(conjugate(Word::letter(tag, s), conj_));
    return out;
  }

  std::string format(const ArtinGraph& graph) const {
    return "(" + format_word(graph, conj_) + ", " + graph.format(support_) + ")";
  }

  /// Same representation (not merely the same subgroup).
  friend bool operator==(const ParabolicSubgroup& a, const ParabolicSubgroup& b) {
    return a.support_ == b.support_ && a.conj_ == b.conj_;
  }

 private:
  Word conj_;
  VertexSet support_;
};

inline void check_parabolic(const ArtinGroup& group, const ParabolicSubgroup& p) {
  group.check(p.conjugator());
  group.graph().check(p.support());
}

/// w in g G_S g^-1, decided as g^-1 w g in G_S.
inline bool member(const ArtinGroup& group, const ParabolicSubgroup& p, const Word& w) {
  check_parabolic(group, p);
  group.check(w);
  const Word& g = p.conjugator();
  return group.in_standard_parabolic(g.inverse() * w * g, p.support());
}

inline VertexSet standard_intersection(const VertexSet& a, const VertexSet& b) { return a & b; }

struct CommonSupport {
  Word f;
  Word g;
  VertexSet support;
};

/// f G_A f^-1 and g G_B g^-1 have the same intersection as f' G_C f'^-1 and
/// g' G_C g'^-1 with C = A & B, where h = f^-1 g, a = rho_A(h),
/// b = rho_B(h^-1 a), f' = f a, g' = g b.
inline CommonSupport common_support_reduction(const Word& f, const VertexSet& a_set, const Word& g,
                                              const VertexSet& b_set) {
  Word h = f.inverse() * g;
  Word a = retraction_image(h, a_set);
  Word k = h.inverse() * a;
  Word b = retraction_image(k, b_set);
  return {f * a, g * b, a_set & b_set};
}

inline CommonSupport common_support_reduction(const ParabolicSubgroup& p, const ParabolicSubgroup& q) {
  return common_support_reduction(p.conjugator(), p.support(), q.conjugator(), q.support());
}

/// Q <= P, tested on the generators of Q.
inline bool contains(const ArtinGroup& group, const ParabolicSubgroup& p, const ParabolicSubgroup& q) {
  for (const auto& gen : q.generators(group.tag()))
    if (!member(group, p, gen)) return false;
  return true;
}

/// Equality as subgroups. Supports of equal parabolics agree, and for equal
/// supports one containment implies the other.
inline bool equal(const ArtinGroup& group, const ParabolicSubgroup& p, const ParabolicSubgroup& q) {
  return p.support() == q.support() && contains(group, p, q);
}

/// Re-poses G_A and g G_A g^-1, both inside t G_D t^-1 for an induced
/// subgraph D, as G_A and h G_A h^-1 inside G_D: h = rho_D(t^-1)^-1 rho_D(t^-1 g).
/// The containment is checked on generators; `view` is the ambient view.
inline Word subgraph_transport(const ArtinGroup& group, const VertexSet& view, const VertexSet& d, const Word& t,
                               const VertexSet& a, const Word& g) {
  require(a.is_subset_of(d), ErrorKind::PreconditionFailed, "support not inside the subgraph");
  Word tinv = t.inverse();
  for (VertexId s : a) {
    Word gen = group.letter(s);
    if (!group.in_standard_parabolic_in(view, tinv * gen * t, d) ||
        !group.in_standard_parabolic_in(view, tinv * g * gen * g.inverse() * t, d))
      fail(ErrorKind::PreconditionFailed, "parabolics are not inside the conjugated subgraph");
  }
  Word f1 = retraction_image(tinv, d);
  Word f2 = retraction_image(tinv * g, d);
  return f1.inverse() * f2;
}

inline Word subgraph_transport(const ArtinGroup& group, const VertexSet& d, const Word& t, const VertexSet& a,
                               const Word& g) {
  return subgraph_transport(group, group.vertices(), d, t, a, g);
}

}  // namespace artin
