#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"
#include "rational.hpp"

namespace biforest {

enum class NodeKind { Leaf, Root, Vertex };

struct NodeRef {
  NodeKind kind;
  int id;
  auto operator<=>(const NodeRef&) const = default;
};

inline NodeRef leaf(int i) { return {NodeKind::Leaf, i}; }
inline NodeRef root(int i) { return {NodeKind::Root, i}; }
inline NodeRef vertex(int i) { return {NodeKind::Vertex, i}; }

struct Edge {
  NodeRef src;
  NodeRef dst;
  auto operator<=>(const Edge&) const = default;
};

// Raw description: leaves 0..leaves-1 and roots 0..roots-1 are ordered,
// vertices carry arbitrary distinct ids. Edges point from leaves towards roots.
struct ForestData {
  int leaves = 0;
  int roots = 0;
  std::vector<int> vertices;
  std::vector<Edge> edges;
};

// Three leaves a < b < c where a and c enter `vertex` through one incoming
// edge and b through another. With vertex = -1 the leaves a < b reach roots
// in the opposite order (c is unused).
struct OrderWitness {
  int vertex = -1;
  int leaf_a = 0, leaf_b = 0, leaf_c = 0;
  std::vector<int> path_a, path_b;  // edge indices from the leaf down to the vertex
};

struct Rejection {
  enum class Kind { Malformed, BadValence, Cycle, OrderViolation } kind;
  std::string message;
  std::optional<OrderWitness> witness;
};

// A validated planar forest.
class Forest {
 public:
  int leaves() const { return data_.leaves; }
  int roots() const { return data_.roots; }
  int vertex_count() const { return static_cast<int>(data_.vertices.size()); }
  const std::vector<int>& vertex_ids() const { return data_.vertices; }
  const std::vector<Edge>& edges() const { return data_.edges; }
  const ForestData& data() const { return data_; }

  // Index (into data().vertices) of a vertex id.
  int vertex_index(int id) const { return vindex_.at(id); }

  int out_edge(NodeRef n) const { return out_.at(n); }
  // Incoming edges of a vertex (by index), ordered by their leaves.
  const std::vector<int>& in_edges(int vidx) const { return in_[static_cast<std::size_t>(vidx)]; }
  int root_edge(int r) const { return root_in_[static_cast<std::size_t>(r)]; }

  // Leaves above a vertex (by index) form the interval [first, second].
  std::pair<int, int> leaf_span(int vidx) const { return span_[static_cast<std::size_t>(vidx)]; }
  std::pair<int, int> edge_span(int e) const { return espan_[static_cast<std::size_t>(e)]; }

  int root_of_leaf(int l) const { return leaf_root_[static_cast<std::size_t>(l)]; }

  // Vertices visited going down from a leaf (indices), ending at its root.
  std::vector<int> path_from_leaf(int l) const {
    std::vector<int> p;
    NodeRef cur = leaf(l);
    while (true) {
      const Edge& e = data_.edges[static_cast<std::size_t>(out_.at(cur))];
      if (e.dst.kind == NodeKind::Root) break;
      cur = e.dst;
      p.push_back(vindex_.at(cur.id));
    }
    return p;
  }

  MultiIndex type() const {
    std::vector<int> k(static_cast<std::size_t>(data_.roots), 0);
    for (int r : leaf_root_) ++k[static_cast<std::size_t>(r)];
    return MultiIndex(k);
  }

  bool is_internal(int e) const {
    const Edge& ed = data_.edges[static_cast<std::size_t>(e)];
    return ed.src.kind == NodeKind::Vertex && ed.dst.kind == NodeKind::Vertex;
  }

  // Canonical description: the leaf interval of every vertex, sorted.
  std::vector<std::pair<int, int>> shape() const {
    std::vector<std::pair<int, int>> s = span_;
    std::sort(s.begin(), s.end());
    return s;
  }

  bool same_shape(const Forest& o) const {
    return leaves() == o.leaves() && type() == o.type() && shape() == o.shape();
  }

 private:
  friend std::variant<Forest, Rejection> validate(const ForestData& d);

  ForestData data_;
  std::map<int, int> vindex_;
  std::map<NodeRef, int> out_;
  std::vector<std::vector<int>> in_;
  std::vector<int> root_in_;
  std::vector<std::pair<int, int>> span_;
  std::vector<std::pair<int, int>> espan_;
  std::vector<int> leaf_root_;
};

inline std::variant<Forest, Rejection> validate(const ForestData& d) {
  using K = Rejection::Kind;
  auto reject = [](K kind, std::string msg) { return Rejection{kind, std::move(msg), std::nullopt}; };
  Forest f;
  f.data_ = d;
  if (d.leaves < 1 || d.roots < 1) return reject(K::Malformed, "a forest needs at least one leaf and one root");
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    if (!f.vindex_.emplace(d.vertices[i], static_cast<int>(i)).second)
      return reject(K::Malformed, "duplicate vertex id " + std::to_string(d.vertices[i]));
  auto exists = [&](NodeRef n) {
    switch (n.kind) {
      case NodeKind::Leaf: return n.id >= 0 && n.id < d.leaves;
      case NodeKind::Root: return n.id >= 0 && n.id < d.roots;
      case NodeKind::Vertex: return f.vindex_.count(n.id) > 0;
    }
    return false;
  };
  std::size_t nv = d.vertices.size();
  std::vector<int> in_count(nv, 0);
  f.in_.assign(nv, {});
  f.root_in_.assign(static_cast<std::size_t>(d.roots), -1);
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const Edge& ed = d.edges[e];
    if (!exists(ed.src) || !exists(ed.dst))
      return reject(K::Malformed, "edge " + std::to_string(e) + " has an unknown endpoint");
    if (ed.src.kind == NodeKind::Root) return reject(K::Malformed, "edge " + std::to_string(e) + " leaves a root");
    if (ed.dst.kind == NodeKind::Leaf) return reject(K::Malformed, "edge " + std::to_string(e) + " enters a leaf");
    if (!f.out_.emplace(ed.src, static_cast<int>(e)).second)
      return reject(K::BadValence, "node has two outgoing edges (edge " + std::to_string(e) + ")");
    if (ed.dst.kind == NodeKind::Root) {
      if (f.root_in_[static_cast<std::size_t>(ed.dst.id)] != -1)
        return reject(K::BadValence, "root " + std::to_string(ed.dst.id) + " has two incoming edges");
      f.root_in_[static_cast<std::size_t>(ed.dst.id)] = static_cast<int>(e);
    } else {
      auto vi = static_cast<std::size_t>(f.vindex_[ed.dst.id]);
      ++in_count[vi];
      f.in_[vi].push_back(static_cast<int>(e));
    }
  }
  for (int l = 0; l < d.leaves; ++l)
    if (!f.out_.count(leaf(l))) return reject(K::BadValence, "leaf " + std::to_string(l) + " has no edge");
  for (int r = 0; r < d.roots; ++r)
    if (f.root_in_[static_cast<std::size_t>(r)] == -1)
      return reject(K::BadValence, "root " + std::to_string(r) + " has no edge");
  for (std::size_t v = 0; v < nv; ++v) {
    if (!f.out_.count(vertex(d.vertices[v])))
      return reject(K::BadValence, "vertex " + std::to_string(d.vertices[v]) + " has no outgoing edge");
    if (in_count[v] < 2)
      return reject(K::BadValence, "vertex " + std::to_string(d.vertices[v]) + " has fewer than 2 incoming edges");
  }

  // acyclicity: every vertex reaches a root
  std::vector<int> state(nv, 0);  // 0 new, 1 on stack, 2 done
  for (std::size_t v0 = 0; v0 < nv; ++v0) {
    std::vector<std::size_t> stack;
    std::size_t v = v0;
    while (state[v] == 0) {
      state[v] = 1;
      stack.push_back(v);
      const Edge& e = d.edges[static_cast<std::size_t>(f.out_[vertex(d.vertices[v])])];
      if (e.dst.kind == NodeKind::Root) break;
      v = static_cast<std::size_t>(f.vindex_[e.dst.id]);
      if (state[v] == 1)
        return reject(K::Cycle, "cycle through vertex " + std::to_string(d.vertices[v]));
    }
    for (auto s : stack) state[s] = 2;
  }

  // leaves above each edge and each vertex
  std::vector<std::vector<int>> above_edge(d.edges.size()), above_vertex(nv);
  f.leaf_root_.assign(static_cast<std::size_t>(d.leaves), -1);
  std::vector<std::vector<int>> path_edges(static_cast<std::size_t>(d.leaves));
  for (int l = 0; l < d.leaves; ++l) {
    NodeRef cur = leaf(l);
    while (true) {
      int e = f.out_[cur];
      above_edge[static_cast<std::size_t>(e)].push_back(l);
      path_edges[static_cast<std::size_t>(l)].push_back(e);
      cur = d.edges[static_cast<std::size_t>(e)].dst;
      if (cur.kind == NodeKind::Root) {
        f.leaf_root_[static_cast<std::size_t>(l)] = cur.id;
        break;
      }
      above_vertex[static_cast<std::size_t>(f.vindex_[cur.id])].push_back(l);
    }
  }
  auto path_to = [&](int l, int stop_edge) {
    std::vector<int> p;
    for (int e : path_edges[static_cast<std::size_t>(l)]) {
      p.push_back(e);
      if (e == stop_edge) break;
    }
    return p;
  };
  // two sets interleave if some element of one lies strictly between two of the other
  auto interleave = [](const std::vector<int>& x, const std::vector<int>& y)
      -> std::optional<std::tuple<int, int, int>> {
    for (int b : y) {
      auto it = std::lower_bound(x.begin(), x.end(), b);
      if (it != x.begin() && it != x.end()) return std::make_tuple(*(it - 1), b, *it);
    }
    return std::nullopt;
  };
  for (std::size_t v = 0; v < nv; ++v) {
    auto& ins = f.in_[v];
    for (std::size_t i = 0; i < ins.size(); ++i)
      for (std::size_t j = 0; j < ins.size(); ++j) {
        if (i == j) continue;
        const auto& x = above_edge[static_cast<std::size_t>(ins[i])];
        const auto& y = above_edge[static_cast<std::size_t>(ins[j])];
        if (auto w = interleave(x, y)) {
          auto [a, b, c] = *w;
          Rejection r = reject(K::OrderViolation, "incoming edges of vertex " + std::to_string(d.vertices[v]) +
                                                      " interleave their leaves");
          r.witness = OrderWitness{d.vertices[v], a, b, c, path_to(a, ins[i]), path_to(b, ins[j])};
          return r;
        }
      }
    std::sort(ins.begin(), ins.end(), [&](int a, int b) {
      return above_edge[static_cast<std::size_t>(a)].front() < above_edge[static_cast<std::size_t>(b)].front();
    });
  }
  for (int l = 0; l + 1 < d.leaves; ++l)
    if (f.leaf_root_[static_cast<std::size_t>(l)] > f.leaf_root_[static_cast<std::size_t>(l + 1)]) {
      Rejection r = reject(K::OrderViolation, "leaves " + std::to_string(l) + " and " + std::to_string(l + 1) +
                                                  " reach the roots in the wrong order");
      r.witness = OrderWitness{-1, l, l + 1, -1, path_edges[static_cast<std::size_t>(l)],
                               path_edges[static_cast<std::size_t>(l + 1)]};
      return r;
    }
  for (std::size_t v = 0; v < nv; ++v)
    f.span_.push_back({above_vertex[v].front(), above_vertex[v].back()});
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    f.espan_.push_back({above_edge[e].front(), above_edge[e].back()});
  return f;
}

// Throwing form of validate().
inline Forest make_forest(const ForestData& d) {
  auto r = validate(d);
  if (auto* rej = std::get_if<Rejection>(&r)) throw InvalidIndex("invalid forest: " + rej->message);
  return std::get<Forest>(std::move(r));
}

enum class ForestClass { Vertical, AlmostVertical, Trivalent, Generic };

inline ForestClass classify(const Forest& f) {
  auto k = f.type();
  if (k.is_vertical()) return ForestClass::Vertical;
  if (k.is_almost_vertical()) return ForestClass::AlmostVertical;
  for (int v = 0; v < f.vertex_count(); ++v)
    if (f.in_edges(v).size() != 2) return ForestClass::Generic;
  return ForestClass::Trivalent;
}

inline const char* to_string(ForestClass c) {
  switch (c) {
    case ForestClass::Vertical: return "vertical";
    case ForestClass::AlmostVertical: return "almost_vertical";
    case ForestClass::Trivalent: return "trivalent";
    case ForestClass::Generic: return "generic";
  }
  return "?";
}

// Forest whose vertices carry heights; `ascending` forests have leaves at
// +infinity (edges go down), descending ones have leaves at -infinity.
struct HeightedForest {
  Forest forest;
  std::vector<Rational> heights;  // indexed like forest.vertex_ids()
  bool ascending = true;

  const Rational& height(int vidx) const { return heights[static_cast<std::size_t>(vidx)]; }
};

inline HeightedForest make_heighted(Forest f, std::vector<Rational> h, bool ascending) {
  if (h.size() != static_cast<std::size_t>(f.vertex_count()))
    throw HeightMismatch("expected " + std::to_string(f.vertex_count()) + " heights");
  for (auto& x : h) x.canonicalize();
  for (std::size_t e = 0; e < f.edges().size(); ++e) {
    if (!f.is_internal(static_cast<int>(e))) continue;
    const Edge& ed = f.edges()[e];
    const Rational& hs = h[static_cast<std::size_t>(f.vertex_index(ed.src.id))];
    const Rational& hd = h[static_cast<std::size_t>(f.vertex_index(ed.dst.id))];
    if (ascending ? hs < hd : hs > hd)
      throw HeightMismatch("edge " + std::to_string(e) + " runs the wrong way in height");
  }
  return {std::move(f), std::move(h), ascending};
}

namespace detail {

// Builds an ascending tree over leaves [lo, hi] (0-based, global) whose merge
// heights are hp[p] for the consecutive pair (p, p+1). Returns the node.
inline NodeRef build_tree(int lo, int hi, const std::vector<Rational>& hp, ForestData& d,
                          std::vector<Rational>& heights) {
  if (lo == hi) return leaf(lo);
  Rational m = hp[static_cast<std::size_t>(lo)];
  for (int p = lo; p < hi; ++p) m = std::min(m, hp[static_cast<std::size_t>(p)]);
  int id = static_cast<int>(d.vertices.size());
  d.vertices.push_back(id);
  heights.push_back(m);
  int start = lo;
  for (int p = lo; p <= hi; ++p) {
    if (p == hi || hp[static_cast<std::size_t>(p)] == m) {
      NodeRef child = build_tree(start, p, hp, d, heights);
      d.edges.push_back({child, vertex(id)});
      start = p + 1;
    }
  }
  return vertex(id);
}

}  // namespace detail

// The ascending forest of type k with the given heights on Vert(k); equal
// consecutive heights with nothing lower in between share a vertex.
inline HeightedForest from_heights(const MultiIndex& k, const std::vector<Rational>& h) {
  if (h.size() != static_cast<std::size_t>(k.vertices()))
    throw HeightMismatch("type " + k.str() + " needs " + std::to_string(k.vertices()) + " heights, got " +
                         std::to_string(h.size()));
  std::vector<Rational> hp(static_cast<std::size_t>(std::max(k.size() - 1, 0)));
  auto vert = k.vertex_set();
  for (std::size_t r = 0; r < vert.size(); ++r) {
    hp[static_cast<std::size_t>(vert[r] - 1)] = h[r];
    hp[static_cast<std::size_t>(vert[r] - 1)].canonicalize();
  }
  ForestData d;
  d.leaves = k.size();
  d.roots = static_cast<int>(k.trees());
  std::vector<Rational> heights;
  int lo = 0;
  for (std::size_t i = 0; i < k.trees(); ++i) {
    NodeRef top = detail::build_tree(lo, lo + k[i] - 1, hp, d, heights);
    d.edges.push_back({top, root(static_cast<int>(i))});
    lo += k[i];
  }
  return make_heighted(make_forest(d), heights, true);
}

// Descending forest of type l: built as the ascending forest for -h, then
// flipped.
inline HeightedForest descending_from_heights(const MultiIndex& l, const std::vector<Rational>& h) {
  std::vector<Rational> neg;
  for (const auto& x : h) neg.push_back(-x);
  auto up = from_heights(l, neg);
  for (auto& x : up.heights) x = -x;
  up.ascending = false;
  return up;
}

// Heights on Vert(type): the height of the vertex where consecutive leaves meet.
inline std::vector<Rational> to_heights(const HeightedForest& hf) {
  const Forest& f = hf.forest;
  std::vector<Rational> out;
  for (int l = 0; l + 1 < f.leaves(); ++l) {
    if (f.root_of_leaf(l) != f.root_of_leaf(l + 1)) continue;
    auto p = f.path_from_leaf(l), q = f.path_from_leaf(l + 1);
    int meet = -1;
    for (int v : p)
      if (std::find(q.begin(), q.end(), v) != q.end()) {
        meet = v;
        break;
      }
    out.push_back(hf.height(meet));
  }
  return out;
}

// Forest with lengths on its internal edges.
struct MetricForest {
  Forest forest;
  std::map<int, Rational> lengths;  // internal edge index -> length
};

inline MetricForest make_metric(Forest f, std::map<int, Rational> lengths) {
  for (std::size_t e = 0; e < f.edges().size(); ++e)
    if (f.is_internal(static_cast<int>(e))) {
      auto it = lengths.find(static_cast<int>(e));
      if (it == lengths.end()) throw HeightMismatch("internal edge " + std::to_string(e) + " has no length");
      if (it->second < 0) throw HeightMismatch("negative edge length");
    }
  return {std::move(f), std::move(lengths)};
}

// Contract one internal edge, merging its upper vertex into the lower one.
inline MetricForest collapse_edge(const MetricForest& m, int e) {
  const Forest& f = m.forest;
  if (!f.is_internal(e)) throw OutOfRange("edge " + std::to_string(e) + " is not internal");
  const Edge& ce = f.edges()[static_cast<std::size_t>(e)];
  ForestData d;
  d.leaves = f.leaves();
  d.roots = f.roots();
  for (int id : f.vertex_ids())
    if (id != ce.src.id) d.vertices.push_back(id);
  std::map<int, Rational> lengths;
  for (std::size_t i = 0; i < f.edges().size(); ++i) {
    if (static_cast<int>(i) == e) continue;
    Edge ed = f.edges()[i];
    if (ed.dst == ce.src) ed.dst = ce.dst;
    auto it = m.lengths.find(static_cast<int>(i));
    if (it != m.lengths.end()) lengths[static_cast<int>(d.edges.size())] = it->second;
    d.edges.push_back(ed);
  }
  return {make_forest(d), std::move(lengths)};
}

// Contract every zero-length internal edge.
inline MetricForest irreducible(MetricForest m) {
  while (true) {
    auto it = std::find_if(m.lengths.begin(), m.lengths.end(), [](const auto& p) { return p.second == 0; });
    if (it == m.lengths.end()) return m;
    m = collapse_edge(m, it->first);
  }
}

// Canonical description of a metric forest: each vertex's leaf interval with
// the length of the edge below it (-1 when that edge goes to a root).
inline std::vector<std::pair<std::pair<int, int>, Rational>> metric_shape(const MetricForest& m) {
  std::vector<std::pair<std::pair<int, int>, Rational>> out;
  const Forest& f = m.forest;
  for (int v = 0; v < f.vertex_count(); ++v) {
    int e = f.out_edge(vertex(f.vertex_ids()[static_cast<std::size_t>(v)]));
    auto it = m.lengths.find(e);
    out.push_back({f.leaf_span(v), it == m.lengths.end() ? Rational(-1) : it->second});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace biforest
