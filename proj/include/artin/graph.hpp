#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "artin/error.hpp"

namespace artin {

/// Index of a vertex inside one ArtinGraph. For graphs read from text the
/// index order coincides with the name order, so "least vertex" choices made
/// on ids are choices by name.
enum class VertexId : std::uint32_t {};

constexpr std::uint32_t index_of(VertexId v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr VertexId vertex(std::uint32_t i) noexcept { return static_cast<VertexId>(i); }

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  using const_iterator = std::vector<VertexId>::const_iterator;

  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> items) : items_(items) { normalize(); }
  explicit VertexSet(std::vector<VertexId> items) : items_(std::move(items)) { normalize(); }

  static VertexSet first_n(std::size_t n) {
    VertexSet s;
    s.items_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) s.items_.push_back(vertex(i));
    return s;
  }

  bool contains(VertexId v) const { return std::binary_search(items_.begin(), items_.end(), v); }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  VertexId front() const { return items_.front(); }
  const std::vector<VertexId>& items() const noexcept { return items_; }

  void insert(VertexId v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) items_.insert(it, v);
  }
  void erase(VertexId v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it != items_.end() && *it == v) items_.erase(it);
  }
  VertexSet with(VertexId v) const {
    VertexSet s = *this;
    s.insert(v);
    return s;
  }
  VertexSet without(VertexId v) const {
    VertexSet s = *this;
    s.erase(v);
    return s;
  }

  bool is_subset_of(const VertexSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  /// Dense membership table over ids [0, n).
  std::vector<char> mask(std::size_t n) const {
    std::vector<char> m(n, 0);
    for (VertexId v : items_)
      if (index_of(v) < n) m[index_of(v)] = 1;
    return m;
  }

  friend VertexSet operator&(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend VertexSet operator|(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend VertexSet operator-(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.items_ <=> b.items_; }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<VertexId> items_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (VertexId v : s) h = (h ^ index_of(v)) * 0x100000001b3ULL;
    return h;
  }
};

/// Identifies a generating set. Graphs that extend another graph without
/// renumbering (kernel windows) keep the tag of the graph they extend.
using GraphTag = std::uint64_t;

inline GraphTag fresh_graph_tag() {
  static std::atomic<GraphTag> counter{1};
  return counter.fetch_add(1);
}

/// Unvalidated graph data as read from a file or built by hand.
struct RawGraph {
  struct Edge {
    std::string u;
    std::string v;
    long long label = 0;
    int line = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

struct Violation {
  ErrorKind kind;
  std::string message;
};

class ArtinGraph;

struct ValidationResult {
  std::shared_ptr<const ArtinGraph> graph;  // null when violations is nonempty
  std::vector<Violation> violations;

  bool ok() const { return graph != nullptr; }
};

/// Even FC-type Artin graph. Immutable once constructed; only obtainable
/// through validation, so every instance satisfies evenness and the triangle
/// criterion.
class ArtinGraph {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  GraphTag tag() const noexcept { return tag_; }
  VertexSet vertices() const { return VertexSet::first_n(size()); }

  const std::string& name(VertexId v) const { return names_.at(index_of(v)); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<VertexId> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  VertexId at(std::string_view name) const {
    auto v = find(name);
    if (!v) fail(ErrorKind::UnknownVertex, "no vertex named '" + std::string(name) + "'");
    return *v;
  }
  bool contains(VertexId v) const noexcept { return index_of(v) < size(); }
  void check(VertexId v) const {
    if (!contains(v)) fail(ErrorKind::UnknownVertex, "vertex id " + std::to_string(index_of(v)) + " out of range");
  }
  void check(const VertexSet& s) const {
    for (VertexId v : s) check(v);
  }

  /// m_{u,v}, or 0 when u and v are not joined.
  int label(VertexId u, VertexId v) const { return labels_[index_of(u) * size() + index_of(v)]; }
  bool adjacent(VertexId u, VertexId v) const { return label(u, v) != 0; }
  bool commute(VertexId u, VertexId v) const { return label(u, v) == 2; }

  VertexSet link(VertexId v) const {
    check(v);
    VertexSet s;
    for (std::uint32_t i = 0; i < size(); ++i)
      if (label(v, vertex(i)) != 0) s.insert(vertex(i));
    return s;
  }
  VertexSet star(VertexId v) const { return link(v).with(v); }

  VertexSet link_in(VertexId v, const VertexSet& view) const {
    VertexSet s;
    for (VertexId u : view)
      if (label(v, u) != 0) s.insert(u);
    return s;
  }
  VertexSet star_in(VertexId v, const VertexSet& view) const { return link_in(v, view).with(v); }

  std::string format(const VertexSet& s) const {
    std::string out = "{";
    bool first = true;
    for (VertexId v : s) {
      if (!first) out += ",";
      out += name(v);
      first = false;
    }
    return out + "}";
  }

  /// Parent graph and vertex injection for graphs produced by
  /// induced_subgraph; null for root graphs.
  const std::shared_ptr<const ArtinGraph>& parent() const noexcept { return parent_; }
  VertexId to_parent(VertexId v) const { return to_parent_.at(index_of(v)); }

  RawGraph raw() const {
    RawGraph r;
    r.vertices = names_;
    for (std::uint32_t i = 0; i < size(); ++i)
      for (std::uint32_t j = i + 1; j < size(); ++j)
        if (int m = label(vertex(i), vertex(j)); m != 0) r.edges.push_back({names_[i], names_[j], m, 0});
    return r;
  }

  static ValidationResult validate(const RawGraph& raw, bool sort_by_name = true);

  /// Validates and throws the first violation. Convenience for code paths
  /// where the data is known to be well formed.
  static std::shared_ptr<const ArtinGraph> build(const RawGraph& raw, bool sort_by_name = true) {
    auto result = validate(raw, sort_by_name);
    if (!result.ok()) fail(result.violations.front().kind, result.violations.front().message);
    return result.graph;
  }

  /// Same graph plus extra vertices appended after the existing ids; keeps
  /// the tag so words over the smaller graph stay valid.
  static std::shared_ptr<const ArtinGraph> extend(const ArtinGraph& base, const RawGraph& extra_vertices_and_edges) {
    RawGraph raw = base.raw();
    raw.vertices.insert(raw.vertices.end(), extra_vertices_and_edges.vertices.begin(),
                        extra_vertices_and_edges.vertices.end());
    raw.edges.insert(raw.edges.end(), extra_vertices_and_edges.edges.begin(), extra_vertices_and_edges.edges.end());
    auto result = validate(raw, false);
    if (!result.ok()) fail(result.violations.front().kind, result.violations.front().message);
    auto g = std::const_pointer_cast<ArtinGraph>(result.graph);
    g->tag_ = base.tag_;
    return g;
  }

 private:
  ArtinGraph() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> by_name_;
  std::vector<int> labels_;
  GraphTag tag_ = 0;
  std::shared_ptr<const ArtinGraph> parent_;
  std::vector<VertexId> to_parent_;

  friend std::shared_ptr<const ArtinGraph> induced_subgraph(const std::shared_ptr<const ArtinGraph>&, const VertexSet&);
};

inline bool valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '^' || c == ',' || c == '#' || c == '|') return false;
  return name != "1";
}

inline ValidationResult ArtinGraph::validate(const RawGraph& raw, bool sort_by_name) {
  ValidationResult result;
  auto& out = result.violations;

  std::vector<std::string> names = raw.vertices;
  for (const auto& n : names)
    if (!valid_vertex_name(n)) out.push_back({ErrorKind::Parse, "invalid vertex name '" + n + "'"});
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1]) out.push_back({ErrorKind::DuplicateVertex, "vertex '" + sorted[i] + "' declared twice"});
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sort_by_name) names = std::move(sorted);
  }

  auto g = std::shared_ptr<ArtinGraph>(new ArtinGraph());
  g->names_ = names;
  for (std::uint32_t i = 0; i < names.size(); ++i) g->by_name_.emplace(names[i], vertex(i));
  const std::size_t n = names.size();
  g->labels_.assign(n * n, 0);

  for (const auto& e : raw.edges) {
    std::string where = e.line > 0 ? " (line " + std::to_string(e.line) + ")" : "";
    std::string edge_name = e.u + "-" + e.v;
    auto iu = g->by_name_.find(e.u);
    auto iv = g->by_name_.find(e.v);
    if (iu == g->by_name_.end() || iv == g->by_name_.end()) {
      out.push_back({ErrorKind::UnknownVertex, "edge " + edge_name + " uses an undeclared vertex" + where});
      continue;
    }
    if (e.u == e.v) {
      out.push_back({ErrorKind::SelfLoop, "self-loop at " + e.u + where});
      continue;
    }
    if (e.label < 2) {
      out.push_back({ErrorKind::LabelTooSmall, "edge " + edge_name + " has label " + std::to_string(e.label) + " < 2" + where});
      continue;
    }
    if (e.label % 2 != 0) {
      out.push_back({ErrorKind::OddLabel, "edge " + edge_name + " has odd label " + std::to_string(e.label) + where});
      continue;
    }
    if (e.label > 1'000'000) {
      out.push_back({ErrorKind::Parse, "edge " + edge_name + " label too large" + where});
      continue;
    }
    std::size_t a = index_of(iu->second), b = index_of(iv->second);
    if (g->labels_[a * n + b] != 0) {
      out.push_back({ErrorKind::DuplicateEdge, "edge " + edge_name + " given twice" + where});
      continue;
    }
    g->labels_[a * n + b] = g->labels_[b * n + a] = static_cast<int>(e.label);
  }

  // Triangle criterion: every triangle carries at least two labels equal to 2.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      int ab = g->labels_[a * n + b];
      if (ab == 0) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        int bc = g->labels_[b * n + c], ca = g->labels_[c * n + a];
        if (bc == 0 || ca == 0) continue;
        int twos = (ab == 2) + (bc == 2) + (ca == 2);
        if (twos < 2) {
          out.push_back({ErrorKind::FcViolation, "triangle {" + names[a] + "," + names[b] + "," + names[c] +
                                                     "} has labels (" + std::to_string(ab) + "," + std::to_string(bc) +
                                                     "," + std::to_string(ca) + ")"});
        }
      }
    }

  if (out.empty()) {
    g->tag_ = fresh_graph_tag();
    result.graph = std::move(g);
  }
  return result;
}

/// Subgraph on S with provenance back to the parent.
inline std::shared_ptr<const ArtinGraph> induced_subgraph(const std::shared_ptr<const ArtinGraph>& graph,
                                                          const VertexSet& s) {
  graph->check(s);
  RawGraph raw;
  for (VertexId v : s) raw.vertices.push_back(graph->name(v));
  for (VertexId u : s)
    for (VertexId v : s)
      if (index_of(u) < index_of(v) && graph->adjacent(u, v))
        raw.edges.push_back({graph->name(u), graph->name(v), graph->label(u, v), 0});
  auto result = ArtinGraph::validate(raw, false);
  if (!result.ok()) fail(ErrorKind::Internal, "induced subgraph failed validation: " + result.violations.front().message);
  auto sub = std::const_pointer_cast<ArtinGraph>(result.graph);
  sub->parent_ = graph;
  sub->to_parent_ = s.items();
  return sub;
}

/// Finest partition of `view` into blocks pairwise joined by label-2 edges
/// (the direct factors of G_view). Blocks are ordered by least member.
inline std::vector<VertexSet> direct_product_split(const ArtinGraph& graph, const VertexSet& view) {
  const auto& items = view.items();
  std::vector<int> comp(items.size(), -1);
  int count = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = count;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < items.size(); ++j)
        if (comp[j] < 0 && !graph.commute(items[u], items[j])) {
          comp[j] = count;
          stack.push_back(j);
        }
    }
    ++count;
  }
  std::vector<VertexSet> blocks(count);
  for (std::size_t i = 0; i < items.size(); ++i) blocks[comp[i]].insert(items[i]);
  return blocks;
}

inline std::vector<VertexSet> direct_product_split(const ArtinGraph& graph) {
  return direct_product_split(graph, graph.vertices());
}

/// G_view = G_X *_{G_Z} G_Y with X = st(x), Y = view - {x}, Z = lk(x).
struct AmalgamSplit {
  VertexId x;
  VertexSet star;  // X
  VertexSet rest;  // Y
  VertexSet link;  // Z
};

inline AmalgamSplit amalgam_split_at(const ArtinGraph& graph, const VertexSet& view, VertexId x) {
  AmalgamSplit s{x, graph.star_in(x, view), view.without(x), graph.link_in(x, view)};
  return s;
}

/// Splits at the least vertex whose star is not the whole view.
inline std::optional<AmalgamSplit> amalgam_split(const ArtinGraph& graph, const VertexSet& view) {
  for (VertexId x : view)
    if (graph.link_in(x, view).size() + 1 != view.size()) return amalgam_split_at(graph, view, x);
  return std::nullopt;
}

inline std::optional<AmalgamSplit> amalgam_split(const ArtinGraph& graph) {
  return amalgam_split(graph, graph.vertices());
}

// ---------------------------------------------------------------------------
// Text format
//
//   file      := { line }
//   line      := [ statement ] [ '#' comment ] newline
//   statement := 'vertex' NAME
//              | 'edge' NAME NAME EVEN_INT
//
// Tokens are separated by blanks. A NAME is a nonempty token without '^',
// ',', '|' or '#', and is not the literal "1". Any extra token on a line is
// an error.
// ---------------------------------------------------------------------------

inline RawGraph parse_graph_text(std::string_view text) {
  RawGraph raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto where = " on line " + std::to_string(line_no);
    if (tok[0] == "vertex") {
      if (tok.size() != 2) fail(ErrorKind::Parse, "expected 'vertex <name>'" + where);
      raw.vertices.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) fail(ErrorKind::Parse, "expected 'edge <name> <name> <label>'" + where);
      const std::string& num = tok[3];
      std::size_t pos = 0;
      long long label = 0;
      try {
        label = std::stoll(num, &pos);
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "bad label '" + num + "'" + where);
      }
      if (pos != num.size()) fail(ErrorKind::Parse, "bad label '" + num + "'" + where);
      raw.edges.push_back({tok[1], tok[2], label, line_no});
    } else {
      fail(ErrorKind::Parse, "unknown statement '" + tok[0] + "'" + where);
    }
  }
  return raw;
}

inline std::string format_graph_text(const ArtinGraph& graph) {
  std::string out;
  for (const auto& n : graph.names()) out += "vertex " + n + "\n";
  for (const auto& e : graph.raw().edges) out += "edge " + e.u + " " + e.v + " " + std::to_string(e.label) + "\n";
  return out;
}

/// Shorthand used by tests and tools: builds from names and (u, v, label).
inline std::shared_ptr<const ArtinGraph> make_graph(std::vector<std::string> names,
                                                    const std::vector<std::tuple<std::string, std::string, int>>& edges) {
  RawGraph raw;
  raw.vertices = std::move(names);
  for (const auto& [u, v, m] : edges) raw.edges.push_back({u, v, m, 0});
  return ArtinGraph::build(raw);
}

}  // namespace artin
