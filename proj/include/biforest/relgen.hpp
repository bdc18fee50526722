#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"
#include "signs.hpp"

namespace biforest {

// alpha, beta: operations of the source and target f-bialgebra; f: a morphism;
// mu, nu: bimodule operations; phi: a bimodule morphism.
enum class OpKind { Alpha, F, Beta, Mu, Nu, Phi };

inline bool is_morphism_kind(OpKind k) { return k == OpKind::F || k == OpKind::Phi; }

struct OpLabel {
  OpKind kind = OpKind::Alpha;
  MultiIndex k;  // the total index for bimodule kinds
  MultiIndex l;
  std::optional<BimoduleIndex> bimodule;

  static OpLabel alpha(MultiIndex k, MultiIndex l) { return {OpKind::Alpha, std::move(k), std::move(l), {}}; }
  static OpLabel beta(MultiIndex k, MultiIndex l) { return {OpKind::Beta, std::move(k), std::move(l), {}}; }
  static OpLabel f(MultiIndex k, MultiIndex l) { return {OpKind::F, std::move(k), std::move(l), {}}; }
  static OpLabel with(OpKind kind, MultiIndex k, MultiIndex l) { return {kind, std::move(k), std::move(l), {}}; }
  static OpLabel bimod(OpKind kind, const BimoduleIndex& b, MultiIndex l) {
    return {kind, b.total(), std::move(l), b};
  }

  int rows_in() const { return k.size(); }
  int cols_in() const { return static_cast<int>(l.trees()); }
  int rows_out() const { return static_cast<int>(k.trees()); }
  int cols_out() const { return l.size(); }

  int degree() const { return k.vertices() + l.vertices() - (is_morphism_kind(kind) ? 0 : 1); }
  bool is_differential() const { return !is_morphism_kind(kind) && k.is_vertical() && l.is_vertical(); }

  auto operator<=>(const OpLabel&) const = default;
  bool operator==(const OpLabel&) const = default;
};

namespace detail {

inline std::string script_int(int n, bool sup) {
  static const char* supd[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  static const char* subd[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  if (n >= 0 && n <= 9) return sup ? supd[n] : subd[n];
  return std::string(sup ? "^{" : "_{") + std::to_string(n) + "}";
}

inline std::string script(const MultiIndex& m, bool sup) {
  if (m.trees() == 1) return script_int(m[0], sup);
  return std::string(sup ? "^{" : "_{") + m.str() + "}";
}

}  // namespace detail

inline std::string symbol(OpKind k) {
  switch (k) {
    case OpKind::Alpha: return "α";
    case OpKind::F: return "f";
    case OpKind::Beta: return "β";
    case OpKind::Mu: return "μ";
    case OpKind::Nu: return "ν";
    case OpKind::Phi: return "Φ";
  }
  return "?";
}

inline std::string render(const OpLabel& op) {
  std::string top = op.bimodule ? "^{" + op.bimodule->str() + "}" : detail::script(op.k, true);
  return symbol(op.kind) + top + detail::script(op.l, false);
}

struct RelationTerm {
  SignBit sign;
  OpLabel outer;  // applied second: the (k0,l0) factor
  OpLabel inner;  // applied first: the (k1,l1) factor
};

struct Relation {
  OpLabel lhs;  // the (k,l) the relation is attached to
  std::vector<RelationTerm> terms;
};

namespace detail {

// Factor with c >= 2 vanishes; c = 0 means the (tensor) differential.
inline bool live(const MultiIndex& k, const MultiIndex& l) { return symmetry_dim(k, l) <= 1; }

inline void sort_terms(std::vector<RelationTerm>& terms) {
  auto key = [](const RelationTerm& t) {
    return std::tie(t.outer.k, t.outer.l, t.inner.k, t.inner.l, t.outer.kind, t.inner.kind, t.outer.bimodule,
                    t.inner.bimodule);
  };
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const RelationTerm& a, const RelationTerm& b) { return key(a) < key(b); });
}

}  // namespace detail

// The relation R^k_l among the operations alpha.
inline Relation relation_R(const MultiIndex& k, const MultiIndex& l, OpKind kind = OpKind::Alpha) {
  Relation r{OpLabel::with(kind, k, l), {}};
  for (const auto& sk : splittings(k))
    for (const auto& sl : splittings(l)) {
      const auto &k0 = sk.lower, &k1 = sk.upper, &l0 = sl.upper, &l1 = sl.lower;
      if (!detail::live(k0, l0) || !detail::live(k1, l1)) continue;
      r.terms.push_back({relation_sign(k0, l0, k1, l1), OpLabel::with(kind, k0, l0), OpLabel::with(kind, k1, l1)});
    }
  detail::sort_terms(r.terms);
  return r;
}

// The relation M^k_l for a morphism f from (A, alpha) to (B, beta).
inline Relation relation_M(const MultiIndex& k, const MultiIndex& l) {
  Relation r{OpLabel::f(k, l), {}};
  for (const auto& sk : splittings(k))
    for (const auto& sl : splittings(l)) {
      const auto &k0 = sk.lower, &k1 = sk.upper, &l0 = sl.upper, &l1 = sl.lower;
      auto s = rho(k0, l0, k1, l1);
      if (detail::live(k1, l1)) r.terms.push_back({s.rho0, OpLabel::f(k0, l0), OpLabel::alpha(k1, l1)});
      if (detail::live(k0, l0)) r.terms.push_back({s.rho1, OpLabel::beta(k0, l0), OpLabel::f(k1, l1)});
    }
  detail::sort_terms(r.terms);
  return r;
}

namespace detail {

// A bimodule label, with an empty side turned into an algebra operation.
inline OpLabel bimodule_label(OpKind kind, const BimoduleIndex& b, const MultiIndex& l) {
  if (b.eps == 0 && b.left.empty()) return OpLabel::beta(MultiIndex(b.right), l);
  if (b.eps == 0 && b.right.empty()) return OpLabel::alpha(MultiIndex(b.left), l);
  return OpLabel::bimod(kind, b, l);
}

}  // namespace detail

// The relation for the bimodule operation mu^{b}_l; signs are those of the
// total indices.
inline Relation relation_bimodule(const BimoduleIndex& b, const MultiIndex& l) {
  Relation r{detail::bimodule_label(OpKind::Mu, b, l), {}};
  for (const auto& sb : bimodule_splittings(b))
    for (const auto& sl : splittings(l)) {
      MultiIndex k0 = sb.lower.total(), k1 = sb.upper.total();
      const auto &l0 = sl.upper, &l1 = sl.lower;
      if (!detail::live(k0, l0) || !detail::live(k1, l1)) continue;
      r.terms.push_back({relation_sign(k0, l0, k1, l1), detail::bimodule_label(OpKind::Mu, sb.lower, l0),
                         detail::bimodule_label(OpKind::Mu, sb.upper, l1)});
    }
  detail::sort_terms(r.terms);
  return r;
}

// True when an operation must vanish on a complex concentrated in degrees
// [0, maxdeg]: its degree exceeds the top degree of its target.
inline bool vanishes_by_degree(const OpLabel& op, int maxdeg) {
  long long a = static_cast<long long>(op.k.trees()), L = op.l.size();
  return op.degree() > a * L * maxdeg;
}

inline Relation prune_by_degree(Relation r, int maxdeg) {
  std::erase_if(r.terms, [&](const RelationTerm& t) {
    return vanishes_by_degree(t.outer, maxdeg) || vanishes_by_degree(t.inner, maxdeg);
  });
  return r;
}

// All (k,l) with |k|, |l| >= 1 and |k| + |l| <= n, ordered by size then lexicographically.
inline std::vector<std::pair<MultiIndex, MultiIndex>> index_pairs(int n) {
  std::vector<std::pair<MultiIndex, MultiIndex>> out;
  for (int s = 2; s <= n; ++s)
    for (int sk = 1; sk < s; ++sk)
      for (const auto& k : compositions(sk))
        for (const auto& l : compositions(s - sk)) out.push_back({k, l});
  return out;
}

}  // namespace biforest
