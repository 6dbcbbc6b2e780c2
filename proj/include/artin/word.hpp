#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "artin/error.hpp"
#include "artin/graph.hpp"

namespace artin {

struct Syllable {
  VertexId gen;
  std::int64_t exp;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

namespace detail {
inline std::atomic<std::size_t>& length_cap_storage() {
  static std::atomic<std::size_t> cap{10'000};
  return cap;
}
}  // namespace detail

/// Global syllable cap; any word growing past it raises LengthCapExceeded.
inline std::size_t length_cap() { return detail::length_cap_storage().load(std::memory_order_relaxed); }
inline void set_length_cap(std::size_t cap) { detail::length_cap_storage().store(cap, std::memory_order_relaxed); }

/// Element of a free group on the vertices of a graph, stored freely reduced:
/// adjacent syllables have distinct generators and no exponent is zero.
/// Tag 0 marks a word not yet bound to a graph (the identity built by
/// default); it combines with any tag.
class Word {
 public:
  Word() = default;
  explicit Word(GraphTag tag) : tag_(tag) {}

  static Word letter(GraphTag tag, VertexId v, std::int64_t e = 1) {
    Word w(tag);
    w.push(v, e);
    return w;
  }

  /// Builds and freely reduces an arbitrary syllable sequence.
  static Word from_syllables(GraphTag tag, const std::vector<Syllable>& syllables) {
    Word w(tag);
    for (const auto& s : syllables) w.push(s.gen, s.exp);
    return w;
  }

  GraphTag tag() const noexcept { return tag_; }
  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }
  std::size_t size() const noexcept { return syl_.size(); }

  /// Number of letters, i.e. the sum of |exponent|.
  std::int64_t length() const noexcept {
    std::int64_t n = 0;
    for (const auto& s : syl_) n += std::llabs(s.exp);
    return n;
  }

  /// Appends gen^e, merging and cancelling against the last syllable.
  void push(VertexId gen, std::int64_t e) {
    if (e == 0) return;
    if (!syl_.empty() && syl_.back().gen == gen) {
      syl_.back().exp += e;
      if (syl_.back().exp == 0) syl_.pop_back();
      return;
    }
    syl_.push_back({gen, e});
    if (syl_.size() > length_cap())
      fail(ErrorKind::LengthCapExceeded, "word exceeded " + std::to_string(length_cap()) + " syllables");
  }

  void append(const Word& other) {
    bind(other.tag_);
    for (const auto& s : other.syl_) push(s.gen, s.exp);
  }

  Word inverse() const {
    Word w(tag_);
    w.syl_.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
    return w;
  }

  void retag(GraphTag tag) { tag_ = tag; }

  friend Word operator*(Word a, const Word& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const Word& a, const Word& b) { return a.syl_ == b.syl_; }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& s : syl_) {
      h = (h ^ index_of(s.gen)) * 1099511628211ULL;
      h = (h ^ static_cast<std::size_t>(s.exp)) * 1099511628211ULL;
    }
    return h;
  }

 private:
  void bind(GraphTag other) {
    if (other == 0 || other == tag_) return;
    if (tag_ == 0) {
      tag_ = other;
      return;
    }
    fail(ErrorKind::GraphMismatch, "combining words over different generating sets");
  }

  GraphTag tag_ = 0;
  std::vector<Syllable> syl_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

inline Word free_reduce(GraphTag tag, const std::vector<Syllable>& syllables) {
  return Word::from_syllables(tag, syllables);
}

inline Word concat(const Word& a, const Word& b) { return a * b; }
inline Word invert(const Word& w) { return w.inverse(); }

/// by * w * by^-1
inline Word conjugate(const Word& w, const Word& by) { return by * w * by.inverse(); }

/// Image under the retraction onto G_S: letters outside S are deleted. This is
/// a homomorphism only because every label is even.
inline Word retraction_image(const Word& w, const VertexSet& s) {
  Word out(w.tag());
  for (const auto& syl : w.syllables())
    if (s.contains(syl.gen)) out.push(syl.gen, syl.exp);
  return out;
}

inline Word retraction_image(const Word& w, const std::vector<char>& mask) {
  Word out(w.tag());
  for (const auto& syl : w.syllables())
    if (index_of(syl.gen) < mask.size() && mask[index_of(syl.gen)]) out.push(syl.gen, syl.exp);
  return out;
}

inline std::int64_t exponent_sum(const Word& w, VertexId v) {
  std::int64_t n = 0;
  for (const auto& s : w.syllables())
    if (s.gen == v) n += s.exp;
  return n;
}

/// Set of generators occurring in w.
inline VertexSet support_of(const Word& w) {
  std::vector<VertexId> ids;
  for (const auto& s : w.syllables()) ids.push_back(s.gen);
  return VertexSet(std::move(ids));
}

inline Word power(const Word& w, std::int64_t n) {
  Word base = n >= 0 ? w : w.inverse();
  Word out(w.tag());
  for (std::int64_t i = 0; i < std::llabs(n); ++i) out.append(base);
  return out;
}

/// Homomorphism from the free group on a source graph into words over a
/// target graph, given by the image of each generator.
class GeneratorMap {
 public:
  GeneratorMap(GraphTag target, std::size_t source_size) : target_(target), images_(source_size) {}

  static GeneratorMap identity(const ArtinGraph& graph) {
    GeneratorMap m(graph.tag(), graph.size());
    for (std::uint32_t i = 0; i < graph.size(); ++i) m.set(vertex(i), Word::letter(graph.tag(), vertex(i)));
    return m;
  }

  void set(VertexId v, Word image) {
    if (index_of(v) >= images_.size()) images_.resize(index_of(v) + 1);
    image.retag(target_);
    images_[index_of(v)] = std::move(image);
  }
  const std::optional<Word>& image(VertexId v) const {
    static const std::optional<Word> none;
    return index_of(v) < images_.size() ? images_[index_of(v)] : none;
  }
  GraphTag target() const noexcept { return target_; }
  std::size_t source_size() const noexcept { return images_.size(); }

 private:
  GraphTag target_;
  std::vector<std::optional<Word>> images_;
};

inline Word apply_map(const Word& w, const GeneratorMap& m) {
  Word out(m.target());
  for (const auto& s : w.syllables()) {
    const auto& img = m.image(s.gen);
    if (!img) fail(ErrorKind::UnmappedGenerator, "generator id " + std::to_string(index_of(s.gen)) + " has no image");
    out.append(power(*img, s.exp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax: blank-separated tokens `gen` or `gen^k` (k a nonzero integer),
// the identity spelled `1`.
// ---------------------------------------------------------------------------

inline Word parse_word(const ArtinGraph& graph, std::string_view text) {
  Word w(graph.tag());
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() == 1 && tokens[0] == "1") return w;
  if (tokens.empty()) fail(ErrorKind::Parse, "empty word (write 1 for the identity)");
  for (const auto& tok : tokens) {
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    std::int64_t e = 1;
    if (caret != std::string::npos) {
      std::string num = tok.substr(caret + 1);
      std::size_t pos = 0;
      try {
        e = std::stoll(num, &pos);
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "bad exponent in '" + tok + "'");
      }
      if (pos != num.size() || e == 0) fail(ErrorKind::Parse, "bad exponent in '" + tok + "'");
    }
    auto v = graph.find(name);
    if (!v) fail(ErrorKind::UnknownVertex, "no vertex named '" + name + "' in word '" + std::string(text) + "'");
    w.push(*v, e);
  }
  return w;
}

inline std::string format_word(const ArtinGraph& graph, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += graph.name(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

/// Comma-separated vertex names; the empty string is the empty set.
inline VertexSet parse_vertex_set(const ArtinGraph& graph, std::string_view text) {
  VertexSet s;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    s.insert(graph.at(item.substr(b, e - b + 1)));
  }
  return s;
}

inline std::string format_vertex_list(const ArtinGraph& graph, const VertexSet& s) {
  std::string out;
  for (VertexId v : s) {
    if (!out.empty()) out += ',';
    out += graph.name(v);
  }
  return out;
}

}  // namespace artin
