#pragma once

#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "artin/dihedral.hpp"
#include "artin/error.hpp"
#include "artin/graph.hpp"
#include "artin/word.hpp"

namespace artin {

enum class BlockTag { InX, InY, InZ };

inline const char* to_string(BlockTag t) {
  switch (t) {
    case BlockTag::InX: return "X";
    case BlockTag::InY: return "Y";
    case BlockTag::InZ: return "Z";
  }
  return "?";
}

/// Factorization w = p_1 ... p_n along G_X *_{G_Z} G_Y with X = st(x),
/// Y = V - {x}, Z = lk(x). When reduced, tags alternate between InX and InY
/// and no block lies in G_Z, except for a lone InZ block holding an element
/// of G_Z. The prefixes p_1...p_i are the vertices of the Bass-Serre geodesic.
struct AmalgamFactorization {
  struct Block {
    BlockTag tag;
    Word word;
  };

  AmalgamSplit split;
  std::vector<Block> blocks;
  bool reduced = false;

  Word product(GraphTag tag) const {
    Word w(tag);
    for (const auto& b : blocks) w.append(b.word);
    return w;
  }
  /// Number of edges on the geodesic; 0 for elements of G_Z.
  std::size_t geodesic_length() const {
    return blocks.size() == 1 && blocks.front().tag == BlockTag::InZ ? 0 : blocks.size();
  }
};

/// Word problem solver for one even FC-type graph. All queries may be
/// restricted to a view S, meaning they run inside the standard parabolic
/// G_S (itself the Artin group of the induced subgraph). Results of the
/// triviality test are memoized; the cache is guarded by a mutex so a single
/// instance can be shared between threads.
class ArtinGroup {
 public:
  explicit ArtinGroup(std::shared_ptr<const ArtinGraph> graph) : graph_(std::move(graph)) {
    require(graph_ != nullptr, ErrorKind::PreconditionFailed, "null graph");
  }

  const ArtinGraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const ArtinGraph>& graph_ptr() const noexcept { return graph_; }
  GraphTag tag() const noexcept { return graph_->tag(); }
  VertexSet vertices() const { return graph_->vertices(); }

  Word identity() const { return Word(tag()); }
  Word letter(VertexId v, std::int64_t e = 1) const { return Word::letter(tag(), v, e); }
  Word parse(std::string_view text) const { return parse_word(*graph_, text); }
  std::string format(const Word& w) const { return format_word(*graph_, w); }

  /// Throws GraphMismatch or UnknownVertex when w does not belong here.
  void check(const Word& w) const {
    if (w.tag() != 0 && w.tag() != tag()) fail(ErrorKind::GraphMismatch, "word belongs to a different graph");
    for (const auto& s : w.syllables()) graph_->check(s.gen);
  }

  bool is_trivial(const Word& w) const { return is_trivial_in(vertices(), w); }
  bool is_equal(const Word& u, const Word& v) const { return is_trivial(u * v.inverse()); }
  bool in_standard_parabolic(const Word& w, const VertexSet& s) const {
    return in_standard_parabolic_in(vertices(), w, s);
  }

  bool is_equal_in(const VertexSet& view, const Word& u, const Word& v) const {
    return is_trivial_in(view, u * v.inverse());
  }

  /// g lies in G_S exactly when g = rho_S(g).
  bool in_standard_parabolic_in(const VertexSet& view, const Word& w, const VertexSet& s) const {
    return is_trivial_in(view, w * retraction_image(w, s).inverse());
  }

  bool is_trivial_in(const VertexSet& view, const Word& w) const {
    check(w);
    if (w.empty()) return true;
    for (const auto& s : w.syllables())
      if (!view.contains(s.gen)) fail(ErrorKind::PreconditionFailed, "word leaves the view " + graph_->format(view));
    auto key = cache_key(view, w);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    bool result = decide(view, w);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(std::move(key), result);
    return result;
  }

  AmalgamFactorization amalgam_reduce(VertexId x, const Word& w) const { return amalgam_reduce_in(vertices(), x, w); }

  /// Britton reduction of w in G_view = G_X *_{G_Z} G_Y split at x.
  AmalgamFactorization amalgam_reduce_in(const VertexSet& view, VertexId x, const Word& w) const {
    check(w);
    graph_->check(x);
    require(view.contains(x), ErrorKind::PreconditionFailed, "split vertex outside the view");
    AmalgamSplit split = amalgam_split_at(*graph_, view, x);
    if (split.star == view) fail(ErrorKind::StarIsFull, "star of " + graph_->name(x) + " is the whole view");

    AmalgamFactorization out;
    out.split = split;

    // Initial blocking: Z letters attach to the block on their left.
    std::vector<AmalgamFactorization::Block> raw;
    Word pending_z(tag());
    for (const auto& s : w.syllables()) {
      BlockTag t = s.gen == x ? BlockTag::InX : split.link.contains(s.gen) ? BlockTag::InZ : BlockTag::InY;
      if (!view.contains(s.gen)) fail(ErrorKind::PreconditionFailed, "word leaves the view");
      if (t == BlockTag::InZ) {
        if (raw.empty())
          pending_z.push(s.gen, s.exp);
        else
          raw.back().word.push(s.gen, s.exp);
        continue;
      }
      if (raw.empty() || raw.back().tag != t) {
        raw.push_back({t, Word(tag())});
        if (raw.size() == 1) raw.back().word = pending_z;
      }
      raw.back().word.push(s.gen, s.exp);
    }

    // Stack reduction: a block in G_Z is replaced by its rho_Z image and
    // absorbed into its left neighbour.
    std::vector<AmalgamFactorization::Block> stack;
    Word prefix_z(tag());
    for (auto& block : raw) {
      if (!stack.empty() && stack.back().tag == block.tag) {
        stack.back().word.append(block.word);
      } else {
        if (stack.empty()) block.word = prefix_z * block.word;
        prefix_z = Word(tag());
        stack.push_back(std::move(block));
      }
      while (!stack.empty()) {
        const auto& top = stack.back();
        const VertexSet& factor = top.tag == BlockTag::InX ? split.star : split.rest;
        if (!in_standard_parabolic_in(factor, top.word, split.link)) break;
        Word z = retraction_image(top.word, split.link);
        stack.pop_back();
        if (stack.empty())
          prefix_z = z;
        else
          stack.back().word.append(z);
      }
    }
    if (raw.empty()) prefix_z = pending_z;

    if (stack.empty()) {
      if (!prefix_z.empty()) out.blocks.push_back({BlockTag::InZ, prefix_z});
    } else {
      out.blocks = std::move(stack);
    }
    out.reduced = true;
    return out;
  }

  /// Drops the memoized results.
  void clear_cache() const {
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.clear();
  }

  std::size_t cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
  }

 private:
  bool decide(const VertexSet& view, const Word& w) const {
    if (view.size() == 1) return false;  // w is nonempty and freely reduced

    auto blocks = direct_product_split(*graph_, view);
    if (blocks.size() > 1) {
      for (const auto& b : blocks) {
        Word part = retraction_image(w, b);
        if (!part.empty() && !is_trivial_in(b, part)) return false;
      }
      return true;
    }

    if (view.size() == 2) {
      VertexId a = view.items()[0], b = view.items()[1];
      int m = graph_->label(a, b);
      if (m == 0) return false;  // free group of rank 2
      return dihedral_reduce(m / 2, w, a, b).is_identity();
    }

    auto split = amalgam_split(*graph_, view);
    if (!split) fail(ErrorKind::Internal, "complete even FC graph without a direct-product split");
    auto fac = amalgam_reduce_in(view, split->x, w);
    if (fac.blocks.empty()) return true;
    if (fac.blocks.size() == 1 && fac.blocks.front().tag == BlockTag::InZ)
      return is_trivial_in(split->link, fac.blocks.front().word);
    return false;
  }

  static std::string cache_key(const VertexSet& view, const Word& w) {
    std::string key;
    key.reserve(4 * view.size() + 12 * w.size() + 4);
    auto put = [&key](const void* p, std::size_t n) { key.append(static_cast<const char*>(p), n); };
    std::uint32_t n = static_cast<std::uint32_t>(view.size());
    put(&n, sizeof n);
    for (VertexId v : view) {
      std::uint32_t i = index_of(v);
      put(&i, sizeof i);
    }
    for (const auto& s : w.syllables()) {
      std::uint32_t i = index_of(s.gen);
      put(&i, sizeof i);
      put(&s.exp, sizeof s.exp);
    }
    return key;
  }

  std::shared_ptr<const ArtinGraph> graph_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, bool> cache_;
};

}  // namespace artin
