#pragma once

// JSON encodings. Rationals travel as "p/q" strings; matrix entries may also
// be plain integers.

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "decorations.hpp"
#include "dgbialgebra.hpp"
#include "field.hpp"
#include "forest.hpp"
#include "moduli.hpp"
#include "realize.hpp"
#include "relgen.hpp"

namespace biforest::io {

using json = nlohmann::ordered_json;

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Comma-separated integers, as on the command line.
inline std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("not an integer list: '" + s + "'");
    }
  }
  return out;
}

inline MultiIndex parse_index(const std::string& s) { return MultiIndex(parse_ints(s)); }

// "2,0|1|2,1"; an empty side is written as nothing or "0" when eps = 0.
inline BimoduleIndex parse_bimodule(const std::string& s) {
  auto a = s.find('|'), b = s.rfind('|');
  if (a == std::string::npos || a == b) throw ParseError("bimodule index needs the form left|eps|right: '" + s + "'");
  std::string mid = s.substr(a + 1, b - a - 1);
  if (mid != "0" && mid != "1") throw ParseError("bimodule eps must be 0 or 1: '" + s + "'");
  int eps = mid[0] - '0';
  auto side = [&](const std::string& t) {
    if (eps == 0 && (t.empty() || t == "0")) return std::vector<int>{};
    return parse_ints(t);
  };
  return BimoduleIndex(side(s.substr(0, a)), eps, side(s.substr(b + 1)));
}

inline json to_json(const MultiIndex& k) { return json(std::vector<int>(k.entries().begin(), k.entries().end())); }

inline MultiIndex index_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("multi-index must be an array of integers");
  return MultiIndex(j.get<std::vector<int>>());
}

inline json to_json(const BimoduleIndex& b) { return {{"left", b.left}, {"eps", b.eps}, {"right", b.right}}; }

inline BimoduleIndex bimodule_from_json(const json& j) {
  return BimoduleIndex(j.at("left").get<std::vector<int>>(), j.at("eps").get<int>(), j.at("right").get<std::vector<int>>());
}

inline const char* kind_name(OpKind k) {
  switch (k) {
    case OpKind::Alpha: return "alpha";
    case OpKind::F: return "f";
    case OpKind::Beta: return "beta";
    case OpKind::Mu: return "mu";
    case OpKind::Nu: return "nu";
    case OpKind::Phi: return "phi";
  }
  return "?";
}

inline json to_json(const OpLabel& op) {
  json j{{"kind", kind_name(op.kind)}, {"k", to_json(op.k)}, {"l", to_json(op.l)}};
  if (op.bimodule) j["bimodule"] = to_json(*op.bimodule);
  return j;
}

inline json to_json(const Relation& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"sign", t.sign.value()}, {"outer", to_json(t.outer)}, {"inner", to_json(t.inner)}});
  return {{"lhs", to_json(r.lhs)}, {"terms", terms}};
}

inline const char* face_kind_name(FaceKind k) {
  switch (k) {
    case FaceKind::K: return "K";
    case FaceKind::J0: return "J0";
    case FaceKind::J1: return "J1";
  }
  return "?";
}

inline json to_json(const Face& f) {
  return {{"k0", to_json(f.k0)}, {"l0", to_json(f.l0)}, {"k1", to_json(f.k1)},
          {"l1", to_json(f.l1)}, {"kind", face_kind_name(f.kind)}, {"sign", f.sign.value()}};
}

// Forests: node references are "l<i>", "r<i>" and "v<id>".
inline std::string node_str(const NodeRef& n) {
  const char* p = n.kind == NodeKind::Leaf ? "l" : n.kind == NodeKind::Root ? "r" : "v";
  return p + std::to_string(n.id);
}

inline NodeRef node_from_str(const std::string& s) {
  if (s.size() < 2) throw ParseError("bad node reference '" + s + "'");
  int id;
  try {
    std::size_t used = 0;
    id = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("bad node reference '" + s + "'");
  }
  switch (s[0]) {
    case 'l': return leaf(id);
    case 'r': return root(id);
    case 'v': return vertex(id);
  }
  throw ParseError("bad node reference '" + s + "'");
}

inline json to_json(const Forest& f) {
  json edges = json::array();
  for (const auto& e : f.edges()) edges.push_back({{"src", node_str(e.src)}, {"dst", node_str(e.dst)}});
  return {{"leaves", f.leaves()}, {"roots", f.roots()}, {"vertices", f.vertex_ids()}, {"edges", edges}};
}

inline ForestData forest_data_from_json(const json& j) {
  ForestData d;
  d.leaves = j.at("leaves").get<int>();
  d.roots = j.at("roots").get<int>();
  d.vertices = j.at("vertices").get<std::vector<int>>();
  for (const auto& e : j.at("edges")) d.edges.push_back({node_from_str(e.at("src")), node_from_str(e.at("dst"))});
  return d;
}

inline Forest forest_from_json(const json& j) {
  auto r = validate(forest_data_from_json(j));
  if (auto* rej = std::get_if<Rejection>(&r)) throw InvalidForest(rej->message);
  return std::get<Forest>(std::move(r));
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("rational must be a \"p/q\" string or an integer");
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json to_json(const HeightedForest& hf) { return {{"forest", to_json(hf.forest)}, {"heights", to_json(hf.heights)}}; }

// Either coordinates {"k","l","heights"} or explicit {"up","down"} forests
// with heights.
inline Biforest biforest_from_json(const json& j) {
  if (j.contains("heights")) {
    ModuliPoint p(index_from_json(j.at("k")), index_from_json(j.at("l")), rationals_from_json(j.at("heights")));
    return realize_point(p);
  }
  auto side = [&](const char* key, bool asc) {
    const json& s = j.at(key);
    return make_heighted(forest_from_json(s.at("forest")), rationals_from_json(s.at("heights")), asc);
  };
  return {side("up", true), side("down", false)};
}

inline json to_json(const Biforest& b) { return {{"up", to_json(b.up)}, {"down", to_json(b.down)}}; }

inline json to_json(const IntersectionGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"id", n.id()}, {"u", n.u.str('U')}, {"d", n.d.str('D')}, {"height", to_string(n.height)}});
  for (const auto& e : g.edges) {
    auto len = e.length();
    edges.push_back({{"u_edge", e.u_edge},
                     {"d_edge", e.d_edge},
                     {"lower", e.lower ? json(*e.lower) : json(nullptr)},
                     {"upper", e.upper ? json(*e.upper) : json(nullptr)},
                     {"length", len ? to_string(*len) : std::string("inf")}});
  }
  return {{"breakpoints", to_json(g.breakpoints)}, {"nodes", nodes}, {"edges", edges}};
}

inline json to_json(const Monoid& M, const Decoration& d) {
  json rows = json::array();
  for (const auto& row : d.rows()) {
    json r = json::array();
    for (Label x : row) r.push_back(M.name(x));
    rows.push_back(r);
  }
  return {{"l", to_json(d.l)}, {"labels", rows}};
}

inline Decoration decoration_from_json(const json& j, const std::function<Label(const std::string&)>& label) {
  MultiIndex l = index_from_json(j.at("l"));
  std::vector<std::vector<Label>> rows;
  for (const auto& r : j.at("labels")) {
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(label(x.get<std::string>()));
  }
  return Decoration::from_rows(l, rows);
}

// Algebra spec files: {"ring": "Q"|"F2", "basis": [{"name","degree"}...],
// "d", "m", "delta": dense matrices (rows index the target), optional
// "operations": [{"k","l","matrix"}] added to the f-bialgebra table}.
inline std::string ring_of(const json& j) {
  std::string r = j.at("ring").get<std::string>();
  if (r != "Q" && r != "F2") throw ParseError("ring must be \"Q\" or \"F2\", got \"" + r + "\"");
  return r;
}

inline SpacePtr space_from_json(const json& j) {
  auto s = std::make_shared<GradedSpace>();
  for (const auto& b : j.at("basis")) {
    s->names.push_back(b.at("name").get<std::string>());
    s->degrees.push_back(b.at("degree").get<int>());
  }
  if (s->names.empty()) throw ParseError("basis is empty");
  return s;
}

template <class F>
F entry_from_json(const json& x) {
  if (x.is_number_integer()) return F::parse(std::to_string(x.get<long>()));
  if (x.is_string()) return F::parse(x.get<std::string>());
  throw ParseError("matrix entry must be an integer or a \"p/q\" string");
}

template <class F>
GradedMap<F> matrix_from_json(const json& rows, const TensorSpace& src, const TensorSpace& dst, int degree) {
  std::vector<std::vector<F>> m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (const auto& x : r) m.back().push_back(entry_from_json<F>(x));
  }
  return from_dense(src, dst, degree, m);
}

template <class F>
json matrix_to_json(const GradedMap<F>& g) {
  json rows = json::array();
  for (const auto& r : to_dense(g)) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  return rows;
}

template <class F>
DgBialgebra<F> algebra_from_json(const json& j) {
  if (ring_of(j) != F::name()) throw ParseError(std::string("algebra is over ") + ring_of(j) + ", not " + F::name());
  SpacePtr s = space_from_json(j);
  TensorSpace a1(s, 1), a2(s, 2);
  auto d = j.contains("d") ? matrix_from_json<F>(j.at("d"), a1, a1, -1) : GradedMap<F>(a1, a1, -1);
  return {s, d, matrix_from_json<F>(j.at("m"), a2, a1, 0), matrix_from_json<F>(j.at("delta"), a1, a2, 0)};
}

// The f-bialgebra of the file: dg_to_f of its dg bialgebra, with any listed
// operations put in the table.
template <class F>
OperationTable<F> table_from_json(const json& j, int bound) {
  auto t = dg_to_f(algebra_from_json<F>(j), bound);
  if (j.contains("operations"))
    for (const auto& o : j.at("operations")) {
      OpLabel op = OpLabel::alpha(index_from_json(o.at("k")), index_from_json(o.at("l")));
      auto z = zero_operation<F>(op, t.space, t.space);
      t.ops.insert_or_assign(op, matrix_from_json<F>(o.at("matrix"), z.src(), z.dst(), op.degree()));
    }
  return t;
}

template <class F>
json algebra_to_json(const DgBialgebra<F>& a) {
  json basis = json::array();
  for (int i = 0; i < a.space->dim(); ++i)
    basis.push_back({{"name", a.space->names[static_cast<std::size_t>(i)]}, {"degree", a.space->degrees[static_cast<std::size_t>(i)]}});
  return {{"ring", F::name()}, {"basis", basis}, {"d", matrix_to_json(a.d)}, {"m", matrix_to_json(a.m)},
          {"delta", matrix_to_json(a.delta)}};
}

}  // namespace biforest::io
