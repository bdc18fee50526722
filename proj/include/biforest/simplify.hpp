#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"
#include "relgen.hpp"
#include "signs.hpp"

namespace biforest {

// Shape of a grid tensor (A^cols)^rows.
struct GridShape {
  int rows = 0;
  int cols = 0;
  auto operator<=>(const GridShape&) const = default;
  int factors() const { return rows * cols; }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// A block of a grid tensor product: `expr` acts on the listed input rows
// (RowTensor) or columns (ColTensor) and writes the listed output ones.
struct Block {
  ExprPtr expr;
  std::vector<int> in_pos;
  std::vector<int> out_pos;
};

// Symbolic composite of operations. Tensor nodes are evaluated as
// sigma_out^{-1} o (B_1 (x) ... (x) B_n) o sigma_in, where sigma_in moves the
// cells of the input grid into block order (row-major inside each block)
// with the Koszul sign.
struct Expr {
  enum class Kind { Zero, Identity, Atom, Differential, RowTensor, ColTensor, Compose };
  Kind kind;
  GridShape in, out;
  int degree = 0;
  SignBit sign;                  // overall factor (-1)^sign
  std::optional<OpLabel> atom;   // Atom, and the label a Zero stands for
  std::vector<Block> blocks;     // tensors
  ExprPtr outer, inner;          // Compose
};

inline GridShape in_shape(const OpLabel& op) { return {op.rows_in(), op.cols_in()}; }
inline GridShape out_shape(const OpLabel& op) { return {op.rows_out(), op.cols_out()}; }

inline ExprPtr make_atom(const OpLabel& op) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Atom;
  e->in = in_shape(op);
  e->out = out_shape(op);
  e->degree = op.degree();
  e->atom = op;
  return e;
}

inline ExprPtr make_zero(const OpLabel& op) {
  auto e = std::make_shared<Expr>(*make_atom(op));
  e->kind = Expr::Kind::Zero;
  return e;
}

inline ExprPtr make_identity(GridShape s) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Identity;
  e->in = e->out = s;
  return e;
}

inline ExprPtr make_differential(GridShape s) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Differential;
  e->in = e->out = s;
  e->degree = -1;
  return e;
}

inline ExprPtr make_compose(ExprPtr outer, ExprPtr inner) {
  if (outer->in != inner->out) throw ShapeMismatch("composition of incompatible shapes");
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Compose;
  e->in = inner->in;
  e->out = outer->out;
  e->degree = outer->degree + inner->degree;
  e->outer = std::move(outer);
  e->inner = std::move(inner);
  return e;
}

namespace detail {

inline bool is_unit_identity(const Expr& e) { return e.kind == Expr::Kind::Identity; }

// Splits identity blocks into single rows/columns, splices nested tensors of
// the same kind and sorts the blocks by their first output position.
inline ExprPtr normalize_tensor(Expr::Kind kind, GridShape in, GridShape out, std::vector<Block> blocks,
                                SignBit sign) {
  bool rows = kind == Expr::Kind::RowTensor;
  std::vector<Block> flat;
  for (auto& b : blocks) {
    const Expr& x = *b.expr;
    if (x.kind == kind) {
      sign += x.sign;
      for (const auto& sb : x.blocks) {
        Block nb{sb.expr, {}, {}};
        for (int p : sb.in_pos) nb.in_pos.push_back(b.in_pos[static_cast<std::size_t>(p)]);
        for (int p : sb.out_pos) nb.out_pos.push_back(b.out_pos[static_cast<std::size_t>(p)]);
        flat.push_back(std::move(nb));
      }
    } else if (x.kind == Expr::Kind::Identity && b.in_pos.size() > 1) {
      GridShape unit = rows ? GridShape{1, x.in.cols} : GridShape{x.in.rows, 1};
      for (std::size_t i = 0; i < b.in_pos.size(); ++i)
        flat.push_back({make_identity(unit), {b.in_pos[i]}, {b.out_pos[i]}});
    } else {
      flat.push_back(std::move(b));
    }
  }
  // insertion sort, collecting the Koszul sign of every swap
  for (std::size_t i = 1; i < flat.size(); ++i)
    for (std::size_t j = i; j > 0 && flat[j].out_pos.front() < flat[j - 1].out_pos.front(); --j) {
      sign += SignBit(static_cast<long long>(flat[j].expr->degree) * flat[j - 1].expr->degree);
      std::swap(flat[j], flat[j - 1]);
    }
  if (flat.size() == 1 && flat[0].expr->in == in && flat[0].expr->out == out) {
    bool trivial = true;
    for (std::size_t i = 0; i < flat[0].in_pos.size(); ++i) trivial &= flat[0].in_pos[i] == static_cast<int>(i);
    for (std::size_t i = 0; i < flat[0].out_pos.size(); ++i) trivial &= flat[0].out_pos[i] == static_cast<int>(i);
    if (trivial && sign.value() == 0) return flat[0].expr;
  }
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->in = in;
  e->out = out;
  e->sign = sign;
  for (const auto& b : flat) e->degree += b.expr->degree;
  e->blocks = std::move(flat);
  return e;
}

inline std::vector<int> range(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

}  // namespace detail

inline ExprPtr make_row_tensor(GridShape in, GridShape out, std::vector<Block> blocks) {
  return detail::normalize_tensor(Expr::Kind::RowTensor, in, out, std::move(blocks), SignBit(0));
}

inline ExprPtr make_col_tensor(GridShape in, GridShape out, std::vector<Block> blocks) {
  return detail::normalize_tensor(Expr::Kind::ColTensor, in, out, std::move(blocks), SignBit(0));
}

// One-step simplification rules.
enum class Rule {
  Zero,        // c(k,l) >= 2
  Tensor,      // both vertical: the tensor differential
  VRow,        // l vertical, one non-vertical tree of k
  VCol,        // k vertical, one non-vertical tree of l
  DRow,        // l with entries <= 2: delete a vertical tree of k
  DCol,        // k with entries <= 2: delete a vertical tree of l
  WRow,        // morphisms, l vertical
  WCol,        // morphisms, k vertical
};

struct RuleChoice {
  Rule rule;
  int position = 0;  // tree deleted by DRow / DCol (0-based)
};

inline std::vector<RuleChoice> applicable_rules(const OpLabel& op) {
  std::vector<RuleChoice> out;
  if (op.bimodule) return out;
  const MultiIndex &k = op.k, &l = op.l;
  int a = static_cast<int>(k.trees()), b = static_cast<int>(l.trees());
  bool kv = k.is_vertical(), lv = l.is_vertical();
  if (is_morphism_kind(op.kind)) {
    if (lv && a >= 2) out.push_back({Rule::WRow});
    if (kv && b >= 2) out.push_back({Rule::WCol});
    return out;
  }
  int c = symmetry_dim(k, l);
  if (c >= 2) return {{Rule::Zero}};
  if (kv && lv) {
    if (a * b >= 2) out.push_back({Rule::Tensor});
    return out;
  }
  if (lv && k.nonvertical() == 1 && a >= 2) out.push_back({Rule::VRow});
  if (kv && l.nonvertical() == 1 && b >= 2) out.push_back({Rule::VCol});
  bool l_small = std::all_of(l.entries().begin(), l.entries().end(), [](int x) { return x <= 2; });
  bool k_small = std::all_of(k.entries().begin(), k.entries().end(), [](int x) { return x <= 2; });
  if (l_small && a >= 2)
    for (int i = 0; i < a; ++i)
      if (k[static_cast<std::size_t>(i)] == 1) out.push_back({Rule::DRow, i});
  if (k_small && b >= 2)
    for (int j = 0; j < b; ++j)
      if (l[static_cast<std::size_t>(j)] == 1) out.push_back({Rule::DCol, j});
  return out;
}

namespace detail {

inline MultiIndex remove_entry(const MultiIndex& m, int i) {
  std::vector<int> v(m.entries().begin(), m.entries().end());
  v.erase(v.begin() + i);
  return MultiIndex(v);
}

// First leaf (0-based) of each tree and the leaves of tree i.
inline std::vector<int> leaves_of(const MultiIndex& m, int i) {
  int s = 0;
  for (int j = 0; j < i; ++j) s += m[static_cast<std::size_t>(j)];
  return range(s, s + m[static_cast<std::size_t>(i)]);
}

inline std::vector<int> leaves_except(const MultiIndex& m, int i) {
  std::vector<int> v;
  int s = 0;
  for (int j = 0; j < static_cast<int>(m.trees()); ++j) {
    if (j != i)
      for (int p = 0; p < m[static_cast<std::size_t>(j)]; ++p) v.push_back(s + p);
    s += m[static_cast<std::size_t>(j)];
  }
  return v;
}

inline std::vector<int> all_except(int n, int i) {
  std::vector<int> v;
  for (int j = 0; j < n; ++j)
    if (j != i) v.push_back(j);
  return v;
}

// alpha~^1_l: one row, delta on the trees with two leaves.
inline ExprPtr row_coproducts(const MultiIndex& l, OpKind kind) {
  int b = static_cast<int>(l.trees());
  std::vector<Block> blocks;
  int out = 0;
  for (int j = 0; j < b; ++j) {
    int lj = l[static_cast<std::size_t>(j)];
    ExprPtr e = lj == 1 ? make_identity({1, 1}) : make_atom(OpLabel::with(kind, MultiIndex{1}, MultiIndex{lj}));
    blocks.push_back({e, {j}, range(out, out + lj)});
    out += lj;
  }
  return make_col_tensor({1, b}, {1, l.size()}, std::move(blocks));
}

// alpha~^k_1: one column, the product on the trees with two leaves.
inline ExprPtr column_products(const MultiIndex& k, OpKind kind) {
  int a = static_cast<int>(k.trees());
  std::vector<Block> blocks;
  int in = 0;
  for (int i = 0; i < a; ++i) {
    int ki = k[static_cast<std::size_t>(i)];
    ExprPtr e = ki == 1 ? make_identity({1, 1}) : make_atom(OpLabel::with(kind, MultiIndex{ki}, MultiIndex{1}));
    blocks.push_back({e, range(in, in + ki), {i}});
    in += ki;
  }
  return make_row_tensor({k.size(), 1}, {a, 1}, std::move(blocks));
}

}  // namespace detail

// Applies one rule; the pieces of the result are atoms.
inline ExprPtr apply_rule(const OpLabel& op, RuleChoice rc) {
  const MultiIndex &k = op.k, &l = op.l;
  int a = static_cast<int>(k.trees()), b = static_cast<int>(l.trees());
  GridShape in = in_shape(op), out = out_shape(op);
  using detail::range;
  switch (rc.rule) {
    case Rule::Zero: return make_zero(op);
    case Rule::Tensor: return make_differential(in);
    case Rule::VRow: {
      int i = 0;
      while (k[static_cast<std::size_t>(i)] == 1) ++i;
      auto leaves = detail::leaves_of(k, i);
      std::vector<Block> blocks{{make_identity({i, b}), range(0, i), range(0, i)},
                                {make_atom(OpLabel::with(op.kind, MultiIndex{k[static_cast<std::size_t>(i)]}, l)),
                                 leaves, {i}},
                                {make_identity({a - i - 1, b}), range(leaves.back() + 1, k.size()), range(i + 1, a)}};
      std::erase_if(blocks, [](const Block& x) { return x.in_pos.empty(); });
      return make_row_tensor(in, out, std::move(blocks));
    }
    case Rule::VCol: {
      int j = 0;
      while (l[static_cast<std::size_t>(j)] == 1) ++j;
      auto leaves = detail::leaves_of(l, j);
      std::vector<Block> blocks{{make_identity({a, j}), range(0, j), range(0, j)},
                                {make_atom(OpLabel::with(op.kind, k, MultiIndex{l[static_cast<std::size_t>(j)]})), {j},
                                 leaves},
                                {make_identity({a, b - j - 1}), range(j + 1, b), range(leaves.back() + 1, l.size())}};
      std::erase_if(blocks, [](const Block& x) { return x.in_pos.empty(); });
      return make_col_tensor(in, out, std::move(blocks));
    }
    case Rule::DRow: {
      int i = rc.position;
      auto rest = OpLabel::with(op.kind, detail::remove_entry(k, i), l);
      std::vector<Block> blocks{{make_atom(rest), detail::leaves_except(k, i), detail::all_except(a, i)},
                                {detail::row_coproducts(l, op.kind), detail::leaves_of(k, i), {i}}};
      return make_row_tensor(in, out, std::move(blocks));
    }
    case Rule::DCol: {
      int j = rc.position;
      auto rest = OpLabel::with(op.kind, k, detail::remove_entry(l, j));
      std::vector<Block> blocks{{make_atom(rest), detail::all_except(b, j), detail::leaves_except(l, j)},
                                {detail::column_products(k, op.kind), {j}, detail::leaves_of(l, j)}};
      return make_col_tensor(in, out, std::move(blocks));
    }
    case Rule::WRow: {
      std::vector<Block> blocks;
      for (int i = 0; i < a; ++i)
        blocks.push_back({make_atom(OpLabel::with(op.kind, MultiIndex{k[static_cast<std::size_t>(i)]}, l)),
                          detail::leaves_of(k, i), {i}});
      return make_row_tensor(in, out, std::move(blocks));
    }
    case Rule::WCol: {
      std::vector<Block> blocks;
      for (int j = 0; j < b; ++j)
        blocks.push_back({make_atom(OpLabel::with(op.kind, k, MultiIndex{l[static_cast<std::size_t>(j)]})), {j},
                          detail::leaves_of(l, j)});
      return make_col_tensor(in, out, std::move(blocks));
    }
  }
  throw Error("unknown rule");
}

using RuleChooser = std::function<RuleChoice(const OpLabel&, const std::vector<RuleChoice>&)>;

inline RuleChoice first_rule(const OpLabel&, const std::vector<RuleChoice>& rules) { return rules.front(); }

namespace detail {

inline ExprPtr rebuild(const Expr& e, const std::function<ExprPtr(const OpLabel&)>& on_atom) {
  switch (e.kind) {
    case Expr::Kind::Atom: return on_atom(*e.atom);
    case Expr::Kind::RowTensor:
    case Expr::Kind::ColTensor: {
      std::vector<Block> blocks;
      for (const auto& b : e.blocks) blocks.push_back({rebuild(*b.expr, on_atom), b.in_pos, b.out_pos});
      bool any_zero = std::any_of(blocks.begin(), blocks.end(),
                                  [](const Block& b) { return b.expr->kind == Expr::Kind::Zero; });
      if (any_zero) {
        auto z = std::make_shared<Expr>(e);
        z->kind = Expr::Kind::Zero;
        z->blocks.clear();
        return z;
      }
      return normalize_tensor(e.kind, e.in, e.out, std::move(blocks), e.sign);
    }
    case Expr::Kind::Compose: return make_compose(rebuild(*e.outer, on_atom), rebuild(*e.inner, on_atom));
    default: return std::make_shared<Expr>(e);
  }
}

}  // namespace detail

// Applies rules until only irreducible atoms, differentials and identities remain.
inline ExprPtr normal_form(const OpLabel& op, const RuleChooser& choose = first_rule) {
  std::function<ExprPtr(const OpLabel&)> expand = [&](const OpLabel& x) -> ExprPtr {
    auto rules = applicable_rules(x);
    if (rules.empty()) return make_atom(x);
    auto step = apply_rule(x, choose(x, rules));
    if (step->kind == Expr::Kind::Zero || step->kind == Expr::Kind::Differential) return step;
    return detail::rebuild(*step, expand);
  };
  return expand(op);
}

// The normal form of an operation some simplification rule applies to.
inline ExprPtr expand_simplifications(const OpLabel& op) {
  if (applicable_rules(op).empty()) throw NotSimplifiable(render(op) + " has no simplification");
  return normal_form(op);
}

// Every atom occurring in an expression.
inline void collect_atoms(const Expr& e, std::vector<OpLabel>& out) {
  if (e.kind == Expr::Kind::Atom) out.push_back(*e.atom);
  for (const auto& b : e.blocks) collect_atoms(*b.expr, out);
  if (e.outer) collect_atoms(*e.outer, out);
  if (e.inner) collect_atoms(*e.inner, out);
}

namespace detail {

inline bool contiguous_in_order(const std::vector<Block>& blocks, bool use_in) {
  int next = 0;
  for (const auto& b : blocks)
    for (int p : use_in ? b.in_pos : b.out_pos)
      if (p != next++) return false;
  return true;
}

inline std::string tau(int a, int b) { return "τ" + script_int(a, true) + script_int(b, false); }

// Renders with a flag telling whether the result is a bare tensor product
// (which needs parentheses when composed).
inline std::pair<std::string, bool> render_expr(const Expr& e) {
  std::string prefix = e.sign.value() ? "-" : "";
  switch (e.kind) {
    case Expr::Kind::Zero: return {"0", false};
    case Expr::Kind::Identity: return {"id", false};
    case Expr::Kind::Atom:
      if (e.atom->is_differential()) return {"∂", false};
      return {render(*e.atom), false};
    case Expr::Kind::Differential: return {"∂", false};
    case Expr::Kind::Compose: {
      auto [o, ot] = render_expr(*e.outer);
      auto [i, it] = render_expr(*e.inner);
      if (ot) o = "(" + o + ")";
      if (it) i = "(" + i + ")";
      return {o + "∘" + i, false};
    }
    case Expr::Kind::RowTensor:
    case Expr::Kind::ColTensor: {
      std::string body;
      bool in_ok = contiguous_in_order(e.blocks, true), out_ok = contiguous_in_order(e.blocks, false);
      for (std::size_t i = 0; i < e.blocks.size(); ++i) {
        auto [s, t] = render_expr(*e.blocks[i].expr);
        if (t || s.find("∘") != std::string::npos) s = "(" + s + ")";
        if (i) body += "⊗";
        body += s;
      }
      if (!in_ok || !out_ok) {
        std::string where;
        for (const auto& b : e.blocks) {
          where += where.empty() ? "" : ",";
          where += std::to_string(b.in_pos.front() + 1);
        }
        body = "[" + body + "]@{" + where + "}";
      }
      if (e.kind == Expr::Kind::RowTensor) return {prefix + body, prefix.empty()};
      // column blocks are conjugated by transposes unless there is a single row
      bool unit_in = true, unit_out = true;
      for (const auto& b : e.blocks) {
        unit_in &= b.in_pos.size() == 1;
        unit_out &= b.out_pos.size() == 1;
      }
      std::string s = prefix;
      bool bare = true;
      if (e.out.rows > 1) {
        s += unit_out ? tau(e.out.cols, e.out.rows) + "∘" : "ι⁻¹∘";
        bare = false;
      }
      std::string inner = body;
      if (e.in.rows > 1) {
        inner = "(" + body + ")∘" + (unit_in ? tau(e.in.rows, e.in.cols) : std::string("ι"));
        bare = false;
      } else if (!bare) {
        inner = "(" + body + ")";
      }
      return {s + inner, bare && prefix.empty()};
    }
  }
  return {"?", false};
}

}  // namespace detail

inline std::string render(const Expr& e) { return detail::render_expr(e).first; }

// Renders a relation as d(op) = sum of the other terms, each factor in normal
// form; relations without a d(op) part read 0 = sum.
inline std::string render_relation(const Relation& r, bool expand = true) {
  auto factor = [&](const OpLabel& op) {
    if (op.is_differential()) return std::string("∂");
    if (!expand) return render(op);
    auto [s, bare] = detail::render_expr(*normal_form(op));
    return bare ? "(" + s + ")" : s;
  };
  std::optional<SignBit> dsign;
  std::vector<const RelationTerm*> rest;
  for (const auto& t : r.terms) {
    bool outer_d = t.outer.is_differential() && t.inner == r.lhs;
    bool inner_d = t.inner.is_differential() && t.outer == r.lhs;
    if ((outer_d || inner_d) && !r.lhs.is_differential()) {
      if (outer_d) dsign = t.sign;
      continue;
    }
    rest.push_back(&t);
  }
  std::string rhs;
  for (const auto* t : rest) {
    SignBit s = dsign ? t->sign + *dsign + SignBit(1) : t->sign;
    if (rhs.empty())
      rhs = s.value() ? "−" : "";
    else
      rhs += s.value() ? " − " : " + ";
    rhs += factor(t->outer) + "∘" + factor(t->inner);
  }
  if (rhs.empty()) rhs = "0";
  return (dsign ? "∂" + render(r.lhs) : std::string("0")) + " = " + rhs;
}

}  // namespace biforest
