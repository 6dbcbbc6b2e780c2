#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "artin/error.hpp"
#include "artin/graph.hpp"
#include "artin/word.hpp"
#include "artin/word_problem.hpp"

namespace artin {

/// Orientation of the conjugation formula for u in lk(x) with k = m_{u,x}/2:
/// writing l = k q + r with 0 <= r < k,
///   x^l u x^-l = sigma_u^(kPowerOrientation * q) u_r sigma_u^(-kPowerOrientation * q).
/// The relation sigma_i = sigma_{i+1} (sigma_i = u_i ... u_{i+k-1}) gives
/// u_{i+k} = sigma^-1 u_i sigma, hence the value -1. A regression test checks
/// it against x^2 u x^-2 in a label-4 dihedral group.
inline constexpr int kPowerOrientation = -1;

/// x^l u x^-l written over the free basis u_0..u_{k-1} of the kernel of the
/// dihedral retraction onto <x>. Generator i of the result stands for u_i.
inline Word cyclic_conjugate(std::int64_t k, std::int64_t l) {
  require(k >= 1, ErrorKind::PreconditionFailed, "cyclic_conjugate needs k >= 1");
  std::int64_t q = l >= 0 ? l / k : -((-l + k - 1) / k);
  std::int64_t r = l - q * k;
  Word sigma;
  for (std::int64_t i = 0; i < k; ++i) sigma.push(vertex(static_cast<std::uint32_t>(i)), 1);
  Word outer = power(sigma, kPowerOrientation * q);
  return outer * Word::letter(0, vertex(static_cast<std::uint32_t>(r))) * outer.inverse();
}

struct IndexedVertex {
  VertexId type;        // vertex of the base graph
  std::int64_t index;
};

/// The graph Delta presenting ker(rho_x : G -> <x>), together with the
/// rewriting data. Vertices of Delta are u_i for u in lk(x) and
/// 0 <= i < k_u, and u_i for u outside st(x) and every integer i. The
/// integer-indexed part is realized on a window [lo, hi] that grows on
/// demand; growth replaces the graph by an extension with the same tag, so
/// previously produced words stay valid. A context is not internally
/// synchronized: callers that share one across threads serialize access.
///
/// Edges: u_i -- v_j carries m_{u,v} when {u,v} is an edge and at least one
/// of u, v lies in lk(x); two integer-indexed types are joined only at equal
/// indices, since the only relators among them are conjugates of relators of
/// G by a single power of x.
class KernelContext {
 public:
  KernelContext(std::shared_ptr<const ArtinGraph> base, VertexId x) : base_(std::move(base)), x_(x) {
    require(base_ != nullptr, ErrorKind::PreconditionFailed, "null graph");
    base_->check(x_);
    link_ = base_->link(x_);
    outside_ = base_->vertices() - base_->star(x_);
    hyp_a_ = outside_.empty();
    hyp_b_ = true;
    for (VertexId u : link_)
      if (base_->label(u, x_) != 2) hyp_b_ = false;
    if (!hyp_a_ && !hyp_b_)
      fail(ErrorKind::HypothesisViolated, "kernel of the retraction onto " + base_->name(x_) +
                                              " needs its star to be every vertex or all labels at " + base_->name(x_) + " equal to 2");
    k_.assign(base_->size(), 0);
    for (VertexId u : link_) k_[index_of(u)] = base_->label(u, x_) / 2;

    RawGraph raw;
    for (VertexId u : base_->vertices()) {
      if (u == x_) continue;
      if (link_.contains(u)) {
        for (std::int64_t i = 0; i < k_[index_of(u)]; ++i) add_vertex(raw, u, i);
      } else {
        add_vertex(raw, u, 0);
      }
    }
    if (!outside_.empty()) lo_ = hi_ = 0;
    add_edges(raw, 0, static_cast<std::uint32_t>(raw.vertices.size()));
    auto result = ArtinGraph::validate(raw, false);
    if (!result.ok()) fail(ErrorKind::Internal, "kernel graph failed validation: " + result.violations.front().message);
    graph_ = result.graph;
  }

  const ArtinGraph& base() const noexcept { return *base_; }
  const std::shared_ptr<const ArtinGraph>& base_ptr() const noexcept { return base_; }
  VertexId x() const noexcept { return x_; }
  const std::shared_ptr<const ArtinGraph>& graph() const noexcept { return graph_; }
  GraphTag tag() const noexcept { return graph_->tag(); }
  bool hypothesis_a() const noexcept { return hyp_a_; }
  bool hypothesis_b() const noexcept { return hyp_b_; }
  const VertexSet& link() const noexcept { return link_; }
  const VertexSet& outside() const noexcept { return outside_; }

  /// k_u = m_{u,x}/2 for u in lk(x), 0 otherwise.
  std::int64_t k(VertexId u) const { return k_.at(index_of(u)); }

  /// Realized index window of the integer-indexed types (empty when there
  /// are none).
  std::pair<std::int64_t, std::int64_t> window() const { return {lo_, hi_}; }

  const IndexedVertex& indexed(VertexId v) const { return info_.at(index_of(v)); }

  std::optional<VertexId> find(VertexId type, std::int64_t index) const {
    for (std::size_t i = 0; i < info_.size(); ++i)
      if (info_[i].type == type && info_[i].index == index) return vertex(static_cast<std::uint32_t>(i));
    return std::nullopt;
  }

  /// Realizes the window when needed.
  VertexId at(VertexId type, std::int64_t index) {
    if (link_.contains(type)) {
      if (index < 0 || index >= k(type))
        fail(ErrorKind::PreconditionFailed, "index out of range for " + base_->name(type));
    } else if (outside_.contains(type)) {
      ensure_window(std::min(lo_, index), std::max(hi_, index));
    } else {
      fail(ErrorKind::UnknownVertex, "no kernel vertex of type " + base_->name(type));
    }
    return *find(type, index);
  }

  /// Vertices of the given types at one index level, e.g. A_0.
  VertexSet level(const VertexSet& types, std::int64_t index) const {
    VertexSet s;
    for (VertexId t : types)
      if (auto v = find(t, index)) s.insert(*v);
    return s;
  }

  /// Maps a word over a single index level back to the base graph by type.
  Word level_to_base(const Word& w) const {
    Word out(base_->tag());
    for (const auto& s : w.syllables()) out.push(indexed(s.gen).type, s.exp);
    return out;
  }

  /// Maps a base word over `types` to the index-0 copies.
  Word base_to_level(const Word& w, std::int64_t index = 0) {
    Word out(tag());
    for (const auto& s : w.syllables()) out.push(at(s.gen, index), s.exp);
    return out;
  }

  void ensure_window(std::int64_t lo, std::int64_t hi) {
    if (outside_.empty() || (lo >= lo_ && hi <= hi_)) return;
    RawGraph extra;
    std::uint32_t first = static_cast<std::uint32_t>(info_.size());
    for (std::int64_t i = hi_ + 1; i <= hi; ++i)
      for (VertexId b : outside_) add_vertex(extra, b, i);
    for (std::int64_t i = lo_ - 1; i >= lo; --i)
      for (VertexId b : outside_) add_vertex(extra, b, i);
    lo_ = std::min(lo_, lo);
    hi_ = std::max(hi_, hi);
    std::vector<std::string> all = graph_->names();
    all.insert(all.end(), extra.vertices.begin(), extra.vertices.end());
    add_edges(extra, first, static_cast<std::uint32_t>(info_.size()), &all);
    graph_ = ArtinGraph::extend(*graph_, extra);
  }

  /// sigma_u = u_0 u_1 ... u_{k_u - 1} for u in lk(x).
  Word sigma(VertexId u) const {
    require(link_.contains(u), ErrorKind::PreconditionFailed, "sigma is defined for link vertices only");
    Word w(tag());
    for (std::int64_t i = 0; i < k(u); ++i) w.push(*find(u, i), 1);
    return w;
  }

  /// The Delta word equal to x^l u x^-l.
  Word conjugate_power(VertexId u, std::int64_t l) {
    if (outside_.contains(u)) return Word::letter(tag(), at(u, l));
    require(link_.contains(u), ErrorKind::PreconditionFailed, "conjugate_power needs u != x");
    Word free = cyclic_conjugate(k(u), l);
    Word out(tag());
    for (const auto& s : free.syllables()) out.push(*find(u, index_of(s.gen)), s.exp);
    return out;
  }

  /// Reidemeister-Schreier rewriting of w in ker rho_x over the transversal
  /// {x^i}: a letter u at running x-exponent i becomes x^i u x^-i.
  Word rewrite(const Word& w) {
    require(w.tag() == 0 || w.tag() == base_->tag(), ErrorKind::GraphMismatch, "word is not over the base graph");
    if (exponent_sum(w, x_) != 0)
      fail(ErrorKind::NotInKernel, "exponent sum of " + base_->name(x_) + " is " + std::to_string(exponent_sum(w, x_)));
    std::int64_t i = 0, lo = lo_, hi = hi_;
    for (const auto& s : w.syllables()) {
      base_->check(s.gen);
      if (s.gen == x_)
        i += s.exp;
      else if (outside_.contains(s.gen))
        lo = std::min(lo, i), hi = std::max(hi, i);
    }
    ensure_window(lo, hi);
    Word out(tag());
    i = 0;
    for (const auto& s : w.syllables()) {
      if (s.gen == x_) {
        i += s.exp;
        continue;
      }
      out.append(power(conjugate_power(s.gen, i), s.exp));
    }
    return out;
  }

  /// u_n -> x^n u x^-n.
  Word embed(const Word& u) const {
    require(u.tag() == 0 || u.tag() == tag(), ErrorKind::GraphMismatch, "word is not over the kernel graph");
    Word out(base_->tag());
    for (const auto& s : u.syllables()) {
      const auto& iv = indexed(s.gen);
      out.push(x_, iv.index);
      out.push(iv.type, s.exp);
      out.push(x_, -iv.index);
    }
    return out;
  }

  /// Defining relators of Delta, one per edge of the realized window.
  std::vector<Word> relators() const {
    std::vector<Word> out;
    for (std::uint32_t i = 0; i < graph_->size(); ++i)
      for (std::uint32_t j = i + 1; j < graph_->size(); ++j)
        if (int m = graph_->label(vertex(i), vertex(j)))
          out.push_back(artin_relator(tag(), vertex(i), vertex(j), m));
    return out;
  }

 private:
  void add_vertex(RawGraph& raw, VertexId type, std::int64_t index) {
    raw.vertices.push_back(base_->name(type) + "_" + std::to_string(index));
    info_.push_back({type, index});
  }

  bool joined(std::size_t i, std::size_t j) const {
    const auto& a = info_[i];
    const auto& b = info_[j];
    if (a.type == b.type || !base_->adjacent(a.type, b.type)) return false;
    if (outside_.contains(a.type) && outside_.contains(b.type)) return a.index == b.index;
    return true;
  }

  /// Edges with at least one end in [first, last).
  void add_edges(RawGraph& raw, std::uint32_t first, std::uint32_t last,
                 const std::vector<std::string>* names = nullptr) {
    const auto& n = names ? *names : raw.vertices;
    for (std::uint32_t j = first; j < last; ++j)
      for (std::uint32_t i = 0; i < j; ++i)
        if (joined(i, j)) raw.edges.push_back({n[i], n[j], base_->label(info_[i].type, info_[j].type), 0});
  }

  std::shared_ptr<const ArtinGraph> base_;
  VertexId x_;
  VertexSet link_;
  VertexSet outside_;
  bool hyp_a_ = false;
  bool hyp_b_ = false;
  std::vector<std::int64_t> k_;
  std::vector<IndexedVertex> info_;
  std::int64_t lo_ = 1, hi_ = 0;
  std::shared_ptr<const ArtinGraph> graph_;
};

inline KernelContext vertex_kernel_graph(std::shared_ptr<const ArtinGraph> graph, VertexId x) {
  return KernelContext(std::move(graph), x);
}

inline Word kernel_rewrite(KernelContext& ctx, const Word& w) { return ctx.rewrite(w); }
inline Word kernel_embed(const KernelContext& ctx, const Word& u) { return ctx.embed(u); }
inline Word conjugate_power_formula(KernelContext& ctx, VertexId u, std::int64_t l) {
  return ctx.conjugate_power(u, l);
}

enum class PhiDirection { Forward, Inverse };

/// The automorphism of G_Delta fixing every generator except a_1, with
/// a_1 -> sigma_a (forward) or a_1 -> a_0^-1 a_1 (a_2 ... a_{k-1})^-1 (inverse).
/// Needs k_a > 1 and every Delta-neighbour of a_1 commuting with all a_i.
inline GeneratorMap phi_map(const KernelContext& ctx, VertexId a, PhiDirection direction) {
  require(ctx.link().contains(a) && ctx.k(a) > 1, ErrorKind::PreconditionFailed, "phi needs a link vertex with k > 1");
  const ArtinGraph& delta = *ctx.graph();
  const std::int64_t k = ctx.k(a);
  std::vector<VertexId> ai;
  for (std::int64_t i = 0; i < k; ++i) ai.push_back(*ctx.find(a, i));
  for (VertexId z : delta.link(ai[1]))
    for (VertexId v : ai)
      if (!delta.commute(z, v))
        fail(ErrorKind::NotAnAutomorphism, delta.name(z) + " does not commute with " + delta.name(v));

  auto build = [&](PhiDirection dir) {
    GeneratorMap m = GeneratorMap::identity(delta);
    Word img(delta.tag());
    if (dir == PhiDirection::Forward) {
      img = ctx.sigma(a);
    } else {
      Word tail(delta.tag());
      for (std::int64_t i = 2; i < k; ++i) tail.push(ai[i], 1);
      img = Word::letter(delta.tag(), ai[0], -1) * Word::letter(delta.tag(), ai[1]) * tail.inverse();
    }
    m.set(ai[1], img);
    return m;
  };
  GeneratorMap forward = build(PhiDirection::Forward);
  GeneratorMap inverse = build(PhiDirection::Inverse);
  for (std::uint32_t i = 0; i < delta.size(); ++i) {
    Word gen = Word::letter(delta.tag(), vertex(i));
    if (!(apply_map(apply_map(gen, inverse), forward) == gen) || !(apply_map(apply_map(gen, forward), inverse) == gen))
      fail(ErrorKind::NotAnAutomorphism, "phi and its inverse do not compose to the identity");
  }
  return direction == PhiDirection::Forward ? forward : inverse;
}

// ---------------------------------------------------------------------------
// Free basis of ker(rho_{V-z}) when every label at z equals 2: the elements
// t z t^-1 with t in ker(rho_L : G_{V-z} -> G_L), L = lk(z).
// ---------------------------------------------------------------------------

struct CovertexBasisLetter {
  Word conjugator;
  std::int64_t exponent = 0;
};

inline void require_covertex_hypothesis(const ArtinGraph& graph, VertexId z) {
  graph.check(z);
  for (VertexId u : graph.link(z))
    if (graph.label(u, z) != 2)
      fail(ErrorKind::HypothesisViolated, "label of " + graph.name(u) + "-" + graph.name(z) + " is not 2");
}

/// Schreier rewriting: with p the rho_{V-z} image of the prefix before an
/// occurrence of z^e, emits (p rho_L(p)^-1, e). Adjacent letters whose
/// conjugators are equal in G are merged.
inline std::vector<CovertexBasisLetter> covertex_rewrite(const ArtinGroup& group, VertexId z, const Word& w) {
  const ArtinGraph& graph = group.graph();
  require_covertex_hypothesis(graph, z);
  group.check(w);
  VertexSet rest = graph.vertices().without(z);
  VertexSet link = graph.link(z);
  if (!group.is_trivial(retraction_image(w, rest)))
    fail(ErrorKind::NotInKernel, "word does not lie in the kernel of the retraction away from " + graph.name(z));

  std::vector<CovertexBasisLetter> out;
  Word prefix = group.identity();
  for (const auto& s : w.syllables()) {
    if (s.gen != z) {
      prefix.push(s.gen, s.exp);
      continue;
    }
    Word t = prefix * retraction_image(prefix, link).inverse();
    if (!out.empty() && group.is_equal_in(rest, out.back().conjugator, t)) {
      out.back().exponent += s.exp;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back({t, s.exp});
    }
  }
  return out;
}

inline Word covertex_expand(const ArtinGroup& group, VertexId z, const std::vector<CovertexBasisLetter>& letters) {
  Word out = group.identity();
  for (const auto& l : letters) out.append(conjugate(group.letter(z, l.exponent), l.conjugator));
  return out;
}

}  // namespace artin
