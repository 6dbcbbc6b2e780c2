#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/graph.hpp"
#include "artin/kernel.hpp"
#include "artin/parabolic.hpp"
#include "artin/word.hpp"
#include "artin/word_problem.hpp"

namespace artin {

struct TraceStep {
  std::string rule;
  std::string detail;
  int depth = 0;
};

/// Either G_A = g G_A g^-1, or G_A & g G_A g^-1 <= d G_B d^-1 with B a proper
/// subset of A. When `exact` is set the intersection equals d G_B d^-1.
struct IntersectionOutcome {
  enum class Kind { Equal, ContainedIn };
  Kind kind = Kind::Equal;
  Word d;
  VertexSet b;
  bool exact = false;

  static IntersectionOutcome equal() { return {}; }
  static IntersectionOutcome contained_in(Word d, VertexSet b, bool exact = false) {
    return {Kind::ContainedIn, std::move(d), std::move(b), exact};
  }
};

enum class DihedralVerdict { Full, Trivial };

inline const char* to_string(DihedralVerdict v) { return v == DihedralVerdict::Full ? "full" : "trivial"; }

/// <a> & g <a> g^-1 inside the dihedral Artin group on {a, x} with label 2k;
/// the answer is all of <a> or trivial. g may only use the letters a and x.
inline DihedralVerdict dihedral_cyclic_intersection(std::int64_t k, const Word& g, VertexId a, VertexId x) {
  require(k >= 1, ErrorKind::PreconditionFailed, "dihedral_cyclic_intersection needs k >= 1");
  for (const auto& syl : g.syllables())
    require(syl.gen == a || syl.gen == x, ErrorKind::PreconditionFailed, "word leaves the dihedral pair");
  std::int64_t s = exponent_sum(g, x);
  if (s % k != 0) return DihedralVerdict::Trivial;

  // Rewrite h = g x^-s into the free basis a_0..a_{k-1} of ker rho_x.
  Word u;
  std::int64_t i = 0;
  for (const auto& syl : g.syllables()) {
    if (syl.gen == x)
      i += syl.exp;
    else
      u.append(power(cyclic_conjugate(k, i), syl.exp));
  }
  // x^s a x^-s = sigma^(o q) a_0 sigma^(-o q) with q = s / k.
  Word sigma;
  for (std::int64_t j = 0; j < k; ++j) sigma.push(vertex(static_cast<std::uint32_t>(j)), 1);
  u.append(power(sigma, kPowerOrientation * (s / k)));
  for (const auto& syl : u.syllables())
    if (syl.gen != vertex(0)) return DihedralVerdict::Trivial;
  return DihedralVerdict::Full;
}

struct IntersectManyResult {
  ParabolicSubgroup result;
  std::vector<ParabolicSubgroup> chain;  // partial intersections Q_1, Q_2, ...
  std::size_t distinct = 0;              // distinct subgroups along the chain
};

/// Constructive intersection of parabolic subgroups.
///
/// core(view, A, g) computes G_A & g G_A g^-1 inside G_view, trying in order:
/// dropping a vertex x when both groups lie in G_{view-x}; a witness from the
/// Bass-Serre tree of the splitting at a vertex x whose link misses part of
/// A; the full-stars base case; and a decomposition of g along its geodesic
/// in the splitting at a vertex with deficient star. A containment witness
/// d G_B d^-1 with B smaller than A is resolved by intersecting
/// G_A & dG_Bd^-1 with gG_Ag^-1 & dG_Bd^-1, which reduces the support.
class IntersectionEngine {
 public:
  explicit IntersectionEngine(const ArtinGroup& group, std::vector<TraceStep>* trace = nullptr, int depth = 0)
      : group_(group), trace_(trace ? trace : &own_trace_), depth_(depth) {}

  IntersectionEngine(const IntersectionEngine&) = delete;
  IntersectionEngine& operator=(const IntersectionEngine&) = delete;

  const std::vector<TraceStep>& trace() const noexcept { return *trace_; }
  const ArtinGroup& group() const noexcept { return group_; }

  ParabolicSubgroup intersect(const ParabolicSubgroup& p, const ParabolicSubgroup& q) {
    check_parabolic(group_, p);
    check_parabolic(group_, q);
    return intersect_in(group_.vertices(), p, q);
  }

  ParabolicSubgroup intersect_in(const VertexSet& view, const ParabolicSubgroup& p, const ParabolicSubgroup& q) {
    CommonSupport cs = common_support_reduction(p, q);
    note("common-support", "C = " + group_.graph().format(cs.support) + ", f' = " + group_.format(cs.f) +
                               ", g' = " + group_.format(cs.g));
    ParabolicSubgroup r = core(view, cs.support, cs.f.inverse() * cs.g);
    return ParabolicSubgroup(cs.f * r.conjugator(), r.support());
  }

  /// G_A & g G_A g^-1 inside G_view.
  ParabolicSubgroup core(VertexSet view, const VertexSet& a, Word g) {
    DepthGuard guard(*this);
    const ArtinGraph& graph = group_.graph();
    if (a.empty()) return ParabolicSubgroup(group_.identity(), {});

    // Drop vertices outside A while g G_A g^-1 stays inside G_{view-x}.
    for (bool again = true; again;) {
      again = false;
      for (VertexId x : view - a) {
        VertexSet rest = view.without(x);
        bool inside = true;
        for (VertexId s : a)
          if (!group_.in_standard_parabolic_in(view, conjugate(group_.letter(s), g), rest)) {
            inside = false;
            break;
          }
        if (!inside) continue;
        g = retraction_image(g, rest);
        view = rest;
        note("subgraph-transport", "drop " + graph.name(x) + ", g = " + group_.format(g));
        again = true;
        break;
      }
    }

    if (group_.in_standard_parabolic_in(view, g, a)) {
      note("conjugator-in-support", "g lies in G_A");
      return ParabolicSubgroup(group_.identity(), a);
    }

    for (VertexId x : view - a) {
      if (a.is_subset_of(graph.link_in(x, view))) continue;
      Word h = link_exterior_reduce(view, a, g, x);
      VertexSet z = graph.link_in(x, view);
      note("link-exterior", "x = " + graph.name(x) + ", witness (" + group_.format(h) + ", " + graph.format(z) + ")");
      return reintersect(view, a, g, h, z);
    }

    bool full_stars = true;
    for (VertexId x : view - a)
      if (graph.star_in(x, view) != view) full_stars = false;
    if (full_stars) {
      IntersectionOutcome out = same_support_full_stars(view, a, g);
      if (out.kind == IntersectionOutcome::Kind::Equal) return ParabolicSubgroup(group_.identity(), a);
      if (out.exact) return ParabolicSubgroup(out.d, out.b);
      return reintersect(view, a, g, out.d, out.b);
    }

    return geodesic_decomposition(view, a, g);
  }

  /// For x outside A with A not inside lk(x) and g outside G_{view-x}: a word
  /// h with G_A & gG_Ag^-1 <= h G_{lk(x)} h^-1, read off the first edge of the
  /// Bass-Serre geodesic from G_Y to gG_Y.
  Word link_exterior_reduce(const VertexSet& view, const VertexSet& a, const Word& g, VertexId x) {
    const ArtinGraph& graph = group_.graph();
    require(view.contains(x) && !a.contains(x), ErrorKind::PreconditionFailed, "x must lie outside A");
    require(!a.is_subset_of(graph.link_in(x, view)), ErrorKind::PreconditionFailed, "A lies inside lk(x)");
    if (group_.in_standard_parabolic_in(view, g, view.without(x)))
      fail(ErrorKind::PreconditionFailed, "g lies in G_{V-x}; reduce to the subgraph first");
    AmalgamFactorization fac = group_.amalgam_reduce_in(view, x, g);
    if (fac.blocks.front().tag == BlockTag::InY) return fac.blocks.front().word;
    return group_.identity();
  }

  /// Base case: every vertex outside A has full star in the view.
  IntersectionOutcome same_support_full_stars(const VertexSet& view, const VertexSet& a_set, const Word& g) {
    DepthGuard guard(*this);
    const ArtinGraph& graph = group_.graph();
    for (VertexId x : view - a_set)
      require(graph.star_in(x, view) == view, ErrorKind::PreconditionFailed, "a vertex outside A has a deficient star");

    std::optional<std::pair<VertexId, VertexId>> pick;
    for (VertexId x : view - a_set) {
      for (VertexId a : a_set)
        if (graph.label(x, a) > 2) {
          pick = {x, a};
          break;
        }
      if (pick) break;
    }
    if (!pick) {
      note("full-stars", "all labels between A and its complement are 2");
      return IntersectionOutcome::equal();
    }
    const auto [x, a] = *pick;
    const std::int64_t ka = graph.label(x, a) / 2;

    if (a_set.is_subset_of(graph.star_in(a, view))) {
      VertexSet pair{a, x};
      VertexSet z = view - pair;
      DihedralVerdict verdict = dihedral_cyclic_intersection(ka, retraction_image(g, pair), a, x);
      note("dihedral-factor", "x = " + graph.name(x) + ", a = " + graph.name(a) + ": " + to_string(verdict));
      ParabolicSubgroup rest = core(z, a_set.without(a), retraction_image(g, z));
      VertexSet d_set = rest.support();
      if (verdict == DihedralVerdict::Full) d_set.insert(a);
      return finish_exact(a_set, rest.conjugator(), d_set);
    }

    // Pass to the kernel of the retraction onto <x>.
    auto sub = induced_subgraph(group_.graph_ptr(), view);
    SubgraphMap map(group_, *sub, view);
    KernelContext ctx(sub, map.down(x));
    Word gs = map.down(g);
    const std::int64_t s = exponent_sum(gs, map.down(x));
    Word h = ctx.rewrite(gs * Word::letter(sub->tag(), map.down(x), -s));
    VertexSet a0 = ctx.level(map.down(a_set), 0);
    auto to_gamma = [&](const Word& level_word) { return map.up(ctx.level_to_base(level_word)); };

    // Case 2: some generator of x^s G_A x^-s retracts away from A_0.
    std::vector<VertexId> order{a};
    for (VertexId b : a_set)
      if (b != a) order.push_back(b);
    for (VertexId b : order) {
      std::int64_t kb = ctx.k(map.down(b));
      if (kb > 1 && s % kb != 0) {
        Word d = to_gamma(retraction_image(h, a0));
        note("kernel-case-2", "s = " + std::to_string(s) + ", drop " + graph.name(b) + ", d = " + group_.format(d));
        return IntersectionOutcome::contained_in(d, a_set.without(b));
      }
    }

    if (s == 0) {
      ArtinGroup delta(ctx.graph());
      IntersectionEngine child(delta, trace_, depth_ + 1);
      note("kernel-case-1", "recurse in the kernel graph on " + delta.graph().format(a0));
      ParabolicSubgroup r = child.core(delta.vertices(), a0, h);
      require(r.support().is_subset_of(a0), ErrorKind::Internal, "kernel intersection left the index-0 level");
      Word d = to_gamma(retraction_image(r.conjugator(), a0));
      VertexSet d_set;
      for (VertexId v : r.support()) d_set.insert(map.up(ctx.indexed(v).type));
      return finish_exact(a_set, d, d_set);
    }

    // Case 3: s is a nonzero multiple of every k_b.
    VertexId a_sub = map.down(a);
    VertexId a1 = *ctx.find(a_sub, 1);
    Word f = apply_map(h, phi_map(ctx, a_sub, PhiDirection::Inverse));
    const std::int64_t l = kPowerOrientation * (s / ka);
    const std::int64_t alpha = exponent_sum(f, a1);
    Word f_prime = f * Word::letter(ctx.tag(), a1, -alpha);
    KernelContext lambda(ctx.graph(), a1);
    Word fl = lambda.rewrite(f_prime);
    VertexSet a00 = lambda.level(a0, 0);
    Word d = to_gamma(lambda.level_to_base(retraction_image(fl, a00)));
    if (alpha + l != 0) {
      note("kernel-case-3.1", "l = " + std::to_string(l) + ", alpha = " + std::to_string(alpha) + ", drop " +
                                  graph.name(a) + ", d = " + group_.format(d));
      return IntersectionOutcome::contained_in(d, a_set.without(a));
    }
    VertexId b = a;
    for (VertexId c : a_set)
      if (c != a && !graph.adjacent(a, c)) {
        b = c;
        break;
      }
    require(b != a, ErrorKind::Internal, "no vertex of A outside st(a)");
    note("kernel-case-3.2", "alpha = " + std::to_string(alpha) + ", drop " + graph.name(b) + ", d = " + group_.format(d));
    return IntersectionOutcome::contained_in(d, a_set.without(b));
  }

  IntersectManyResult intersect_many(const std::vector<ParabolicSubgroup>& family) {
    require(!family.empty(), ErrorKind::PreconditionFailed, "intersect_many needs at least one parabolic");
    IntersectManyResult out;
    ParabolicSubgroup current = family.front();
    check_parabolic(group_, current);
    out.chain.push_back(current);
    out.distinct = 1;
    for (std::size_t i = 1; i < family.size(); ++i) {
      if (current.support().empty()) {
        note("chain", "trivial subgroup reached after " + std::to_string(i) + " terms");
        break;
      }
      ParabolicSubgroup next = contains(group_, family[i], current) ? current : intersect(current, family[i]);
      if (!equal(group_, next, current)) {
        require(next.support().size() < current.support().size(), ErrorKind::Internal,
                "proper containment without a smaller support");
        ++out.distinct;
      }
      current = next;
      out.chain.push_back(current);
    }
    require(out.distinct <= group_.graph().size() + 1, ErrorKind::Internal, "chain longer than |V| + 1");
    out.result = current;
    return out;
  }

  static constexpr int kMaxDepth = 400;

 private:
  struct DepthGuard {
    explicit DepthGuard(IntersectionEngine& e) : engine(e) {
      if (++engine.depth_ > kMaxDepth) fail(ErrorKind::Internal, "intersection recursion too deep");
    }
    ~DepthGuard() { --engine.depth_; }
    IntersectionEngine& engine;
  };

  /// Vertex and word transport between a view and its induced subgraph.
  struct SubgraphMap {
    SubgraphMap(const ArtinGroup& g, const ArtinGraph& s, const VertexSet& view)
        : parent(g), sub(s), down_ids(g.graph().size(), vertex(UINT32_MAX)) {
      std::uint32_t i = 0;
      for (VertexId v : view) down_ids[index_of(v)] = vertex(i++);
    }
    VertexId down(VertexId v) const { return down_ids.at(index_of(v)); }
    VertexId up(VertexId v) const { return sub.to_parent(v); }
    VertexSet down(const VertexSet& s) const {
      VertexSet out;
      for (VertexId v : s) out.insert(down(v));
      return out;
    }
    Word down(const Word& w) const {
      Word out(sub.tag());
      for (const auto& s : w.syllables()) out.push(down(s.gen), s.exp);
      return out;
    }
    Word up(const Word& w) const {
      Word out(parent.tag());
      for (const auto& s : w.syllables()) out.push(up(s.gen), s.exp);
      return out;
    }
    const ArtinGroup& parent;
    const ArtinGraph& sub;
    std::vector<VertexId> down_ids;
  };

  IntersectionOutcome finish_exact(const VertexSet& a_set, const Word& d, const VertexSet& d_set) {
    if (d_set == a_set) return IntersectionOutcome::equal();
    return IntersectionOutcome::contained_in(d, d_set, true);
  }

  ParabolicSubgroup reintersect(const VertexSet& view, const VertexSet& a, const Word& g, const Word& d,
                                const VertexSet& b) {
    ParabolicSubgroup witness(d, b);
    ParabolicSubgroup r1 = intersect_in(view, ParabolicSubgroup(group_.identity(), a), witness);
    ParabolicSubgroup r2 = intersect_in(view, ParabolicSubgroup(g, a), witness);
    note("reintersect", "pieces " + r1.format(group_.graph()) + " and " + r2.format(group_.graph()));
    return intersect_in(view, r1, r2);
  }

  ParabolicSubgroup geodesic_decomposition(const VertexSet& view, const VertexSet& a, const Word& g) {
    const ArtinGraph& graph = group_.graph();
    VertexId x{};
    bool found = false;
    for (VertexId v : view - a)
      if (graph.star_in(v, view) != view) {
        x = v;
        found = true;
        break;
      }
    require(found, ErrorKind::Internal, "no vertex with deficient star");
    AmalgamFactorization fac = group_.amalgam_reduce_in(view, x, g);
    require(fac.geodesic_length() > 0, ErrorKind::Internal, "conjugator in the edge group was not transported");
    const std::size_t m = fac.blocks.size();
    const VertexSet& z = fac.split.link;
    note("geodesic", "x = " + graph.name(x) + ", " + std::to_string(m) + " blocks");

    std::vector<Word> gp(m + 1, group_.identity());
    Word prefix = group_.identity();
    for (std::size_t i = 1; i < m; ++i) {
      prefix.append(fac.blocks[i - 1].word);
      Word zi = retraction_image(prefix.inverse() * retraction_image(prefix, a), z);
      gp[i] = prefix * zi;
    }
    gp[m] = g;

    for (std::size_t i = 0; i < m; ++i) {
      Word q = gp[i].inverse() * gp[i + 1];
      const VertexSet& factor = fac.blocks[i].tag == BlockTag::InX ? fac.split.star : fac.split.rest;
      ParabolicSubgroup r = core(factor, a, q);
      if (m == 1) return r;
      if (r.support() != a) {
        note("geodesic-witness", "step " + std::to_string(i));
        return reintersect(view, a, g, gp[i] * r.conjugator(), r.support());
      }
    }
    note("geodesic", "all steps keep the support");
    return ParabolicSubgroup(group_.identity(), a);
  }

  void note(std::string rule, std::string detail) {
    trace_->push_back({std::move(rule), std::move(detail), depth_});
  }

  const ArtinGroup& group_;
  std::vector<TraceStep> own_trace_;
  std::vector<TraceStep>* trace_;
  int depth_;
};

inline ParabolicSubgroup intersect(const ArtinGroup& group, const ParabolicSubgroup& p, const ParabolicSubgroup& q) {
  IntersectionEngine engine(group);
  return engine.intersect(p, q);
}

inline IntersectManyResult intersect_many(const ArtinGroup& group, const std::vector<ParabolicSubgroup>& family) {
  IntersectionEngine engine(group);
  return engine.intersect_many(family);
}

}  // namespace artin
