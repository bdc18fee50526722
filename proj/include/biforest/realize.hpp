#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "forest.hpp"
#include "moduli.hpp"
#include "rational.hpp"

namespace biforest {

// A point of a realized forest at a given height: a vertex, or the interior of
// an edge.
struct ForestPoint {
  enum class Kind { Vertex, Edge } kind;
  int id;  // vertex index or edge index

  auto operator<=>(const ForestPoint&) const = default;
  std::string str(char side) const {
    return std::string(1, side) + ":" + (kind == Kind::Vertex ? "v" : "e") + std::to_string(id);
  }
};

// Height interval covered by an edge; nullopt bounds are -inf / +inf.
struct HeightSpan {
  std::optional<Rational> lo, hi;

  bool contains(const Rational& h) const { return (!lo || *lo < h) && (!hi || h < *hi); }
  bool covers(const std::optional<Rational>& a, const std::optional<Rational>& b) const {
    bool low = !lo || (a && *lo <= *a);
    bool high = !hi || (b && *b <= *hi);
    return low && high;
  }
};

// Edge spans of a heighted forest. Ascending forests have leaves at +inf,
// descending ones at -inf.
inline std::vector<HeightSpan> edge_spans(const HeightedForest& hf) {
  const Forest& f = hf.forest;
  std::vector<HeightSpan> out;
  for (const Edge& e : f.edges()) {
    auto h = [&](const NodeRef& n) -> std::optional<Rational> {
      if (n.kind != NodeKind::Vertex) return std::nullopt;
      return hf.height(f.vertex_index(n.id));
    };
    // src is the leaf side
    if (hf.ascending)
      out.push_back({h(e.dst), h(e.src)});
    else
      out.push_back({h(e.src), h(e.dst)});
  }
  return out;
}

struct GammaNode {
  ForestPoint u, d;
  Rational height;

  std::string id() const { return u.str('U') + "|" + d.str('D') + "|h=" + to_string(height); }
};

struct GammaEdge {
  int u_edge, d_edge;
  std::optional<int> lower, upper;  // node indices; nullopt is an end at infinity
  std::optional<Rational> lo, hi;

  bool infinite() const { return !lo || !hi; }
  std::optional<Rational> length() const {
    if (infinite()) return std::nullopt;
    return *hi - *lo;
  }
};

// Gamma(U,D): the fiber product of the two realized forests over the height
// line, subdivided at every vertex height.
struct IntersectionGraph {
  std::vector<Rational> breakpoints;
  std::vector<HeightSpan> u_spans, d_spans;
  std::vector<GammaNode> nodes;  // sorted by (height, U point, D point)
  std::vector<GammaEdge> edges;  // sorted by (interval, U edge, D edge)

  int u_crossing(const Rational& h) const {
    return static_cast<int>(std::count_if(u_spans.begin(), u_spans.end(), [&](const auto& s) { return s.contains(h); }));
  }
  int d_crossing(const Rational& h) const {
    return static_cast<int>(std::count_if(d_spans.begin(), d_spans.end(), [&](const auto& s) { return s.contains(h); }));
  }
  int crossing(const Rational& h) const {
    int n = 0;
    for (const auto& e : edges)
      if (HeightSpan{e.lo, e.hi}.contains(h)) ++n;
    return n;
  }
  bool is_breakpoint(const Rational& h) const { return std::binary_search(breakpoints.begin(), breakpoints.end(), h); }
};

namespace detail {

inline std::vector<ForestPoint> points_at(const HeightedForest& hf, const std::vector<HeightSpan>& spans,
                                          const Rational& h) {
  std::vector<ForestPoint> out;
  for (int v = 0; v < hf.forest.vertex_count(); ++v)
    if (hf.height(v) == h) out.push_back({ForestPoint::Kind::Vertex, v});
  for (std::size_t e = 0; e < spans.size(); ++e)
    if (spans[e].contains(h)) out.push_back({ForestPoint::Kind::Edge, static_cast<int>(e)});
  return out;
}

// The point of edge e at the finite end h of one of its sub-intervals.
inline ForestPoint end_point(const HeightedForest& hf, int e, const HeightSpan& s, const Rational& h) {
  const Edge& ed = hf.forest.edges()[static_cast<std::size_t>(e)];
  bool at_lo = s.lo && *s.lo == h, at_hi = s.hi && *s.hi == h;
  if (at_lo || at_hi) {
    // the lower end is dst for ascending forests, src for descending ones
    const NodeRef& lower = hf.ascending ? ed.dst : ed.src;
    const NodeRef& upper = hf.ascending ? ed.src : ed.dst;
    const NodeRef& n = at_lo ? lower : upper;
    return {ForestPoint::Kind::Vertex, hf.forest.vertex_index(n.id)};
  }
  return {ForestPoint::Kind::Edge, e};
}

}  // namespace detail

inline IntersectionGraph henriques_graph(const HeightedForest& up, const HeightedForest& down) {
  IntersectionGraph g;
  g.u_spans = edge_spans(up);
  g.d_spans = edge_spans(down);
  std::set<Rational> bp(up.heights.begin(), up.heights.end());
  bp.insert(down.heights.begin(), down.heights.end());
  g.breakpoints.assign(bp.begin(), bp.end());

  std::map<std::tuple<std::size_t, ForestPoint, ForestPoint>, int> index;
  for (std::size_t b = 0; b < g.breakpoints.size(); ++b) {
    const Rational& h = g.breakpoints[b];
    for (const auto& pu : detail::points_at(up, g.u_spans, h))
      for (const auto& pd : detail::points_at(down, g.d_spans, h)) {
        index[{b, pu, pd}] = static_cast<int>(g.nodes.size());
        g.nodes.push_back({pu, pd, h});
      }
  }

  std::size_t nb = g.breakpoints.size();
  for (std::size_t i = 0; i <= nb; ++i) {
    std::optional<Rational> lo, hi;
    if (i > 0) lo = g.breakpoints[i - 1];
    if (i < nb) hi = g.breakpoints[i];
    for (std::size_t eu = 0; eu < g.u_spans.size(); ++eu) {
      if (!g.u_spans[eu].covers(lo, hi)) continue;
      for (std::size_t ed = 0; ed < g.d_spans.size(); ++ed) {
        if (!g.d_spans[ed].covers(lo, hi)) continue;
        GammaEdge e{static_cast<int>(eu), static_cast<int>(ed), std::nullopt, std::nullopt, lo, hi};
        auto node = [&](std::size_t b, const Rational& h) {
          auto pu = detail::end_point(up, e.u_edge, g.u_spans[eu], h);
          auto pd = detail::end_point(down, e.d_edge, g.d_spans[ed], h);
          return index.at({b, pu, pd});
        };
        if (lo) e.lower = node(i - 1, *lo);
        if (hi) e.upper = node(i, *hi);
        g.edges.push_back(std::move(e));
      }
    }
  }
  return g;
}

inline IntersectionGraph henriques_graph(const Biforest& b) { return henriques_graph(b.up, b.down); }

// Deterministic DOT text. Ends at infinity are drawn as point nodes and the
// edges reaching them are dashed.
inline std::string dot_export(const IntersectionGraph& g) {
  std::string s = "graph gamma {\n";
  for (const auto& n : g.nodes) s += "  \"" + n.id() + "\";\n";
  auto inf_id = [](const GammaEdge& e, bool top) {
    return "U:e" + std::to_string(e.u_edge) + "|D:e" + std::to_string(e.d_edge) + "|h=" + (top ? "+inf" : "-inf");
  };
  for (const auto& e : g.edges) {
    if (!e.lower) s += "  \"" + inf_id(e, false) + "\" [shape=point];\n";
    if (!e.upper) s += "  \"" + inf_id(e, true) + "\" [shape=point];\n";
  }
  for (const auto& e : g.edges) {
    std::string a = e.lower ? g.nodes[static_cast<std::size_t>(*e.lower)].id() : inf_id(e, false);
    std::string b = e.upper ? g.nodes[static_cast<std::size_t>(*e.upper)].id() : inf_id(e, true);
    auto len = e.length();
    s += "  \"" + a + "\" -- \"" + b + "\" [label=\"" + (len ? to_string(*len) : std::string("inf")) + "\"";
    if (e.infinite()) s += ", style=dashed";
    s += "];\n";
  }
  return s + "}\n";
}

// Height-free description: nodes in (height, U, D) order, edges by endpoint
// ranks and lengths. Equal for graphs that differ by a global height shift.
struct CanonicalGraph {
  std::vector<std::pair<ForestPoint, ForestPoint>> nodes;
  std::vector<std::tuple<int, int, int, int, std::optional<Rational>>> edges;  // lower, upper (-1 = inf), U, D, length
  std::vector<Rational> gaps;  // differences of consecutive breakpoints

  bool operator==(const CanonicalGraph&) const = default;
};

inline CanonicalGraph canonical_form(const IntersectionGraph& g) {
  CanonicalGraph c;
  for (const auto& n : g.nodes) c.nodes.push_back({n.u, n.d});
  for (const auto& e : g.edges) c.edges.emplace_back(e.lower.value_or(-1), e.upper.value_or(-1), e.u_edge, e.d_edge, e.length());
  std::sort(c.edges.begin(), c.edges.end());
  for (std::size_t i = 1; i < g.breakpoints.size(); ++i) c.gaps.push_back(g.breakpoints[i] - g.breakpoints[i - 1]);
  return c;
}

// Connected components, counting each end at infinity as its own vertex.
inline int component_count(const IntersectionGraph& g) {
  std::vector<int> parent(g.nodes.size() + 2 * g.edges.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  int next = static_cast<int>(g.nodes.size());
  for (const auto& e : g.edges) {
    int a = e.lower ? *e.lower : next++;
    int b = e.upper ? *e.upper : next++;
    parent[static_cast<std::size_t>(find(a))] = find(b);
  }
  std::set<int> roots;
  for (int i = 0; i < next; ++i) roots.insert(find(i));
  return static_cast<int>(roots.size());
}

}  // namespace biforest
