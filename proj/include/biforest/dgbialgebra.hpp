#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "evaluate.hpp"
#include "graded.hpp"
#include "relgen.hpp"
#include "simplify.hpp"

namespace biforest {

// A dg bialgebra (A, d, m, delta); no unit or counit is assumed.
template <class F>
struct DgBialgebra {
  SpacePtr space;
  GradedMap<F> d;      // A -> A, degree -1
  GradedMap<F> m;      // A^2 -> A
  GradedMap<F> delta;  // A -> A^2

  // Names of the dg bialgebra axioms that fail.
  std::vector<std::string> diagnostics() const {
    std::vector<std::string> bad;
    TensorSpace a1(space, 1), a2(space, 2), a3(space, 3);
    auto id = GradedMap<F>::identity(a1);
    if (!compose(d, d).is_zero()) bad.push_back("d^2 = 0");
    auto lhs = compose(d, m);
    lhs.accumulate(compose(m, tensor_differential(d, 2)), SignBit(1));
    if (!lhs.is_zero()) bad.push_back("d is a derivation of m");
    auto co = compose(delta, d);
    co.accumulate(compose(tensor_differential(d, 2), delta), SignBit(1));
    if (!co.is_zero()) bad.push_back("d is a coderivation of delta");
    auto as = compose(m, tensor(m, id));
    as.accumulate(compose(m, tensor(id, m)), SignBit(1));
    if (!as.is_zero()) bad.push_back("m is associative");
    auto coas = compose(tensor(delta, id), delta);
    coas.accumulate(compose(tensor(id, delta), delta), SignBit(1));
    if (!coas.is_zero()) bad.push_back("delta is coassociative");
    auto hopf = compose(delta, m);
    hopf.accumulate(compose(tensor(m, m), compose(tau_map<F>(space, 2, 2), tensor(delta, delta))), SignBit(1));
    if (!hopf.is_zero()) bad.push_back("delta is multiplicative");
    return bad;
  }
};

// Zero matrix of the right shape for an operation from A to B.
template <class F>
GradedMap<F> zero_operation(const OpLabel& op, const SpacePtr& src, const SpacePtr& dst) {
  return GradedMap<F>(TensorSpace(src, op.rows_in() * op.cols_in()), TensorSpace(dst, op.rows_out() * op.cols_out()),
                      op.degree());
}

// The operations alpha^k_l of an f-bialgebra up to a bound; labels are
// stored with kind Alpha. Unlisted operations of positive degree or with
// c(k,l) >= 2 are zero.
template <class F>
struct OperationTable {
  SpacePtr space;
  int bound = 0;
  std::map<OpLabel, GradedMap<F>> ops;

  static OpLabel key(const OpLabel& op) { return OpLabel::alpha(op.k, op.l); }

  const GradedMap<F>* find(const OpLabel& op) const {
    auto it = ops.find(key(op));
    return it == ops.end() ? nullptr : &it->second;
  }

  bool known_zero(const OpLabel& op) const {
    return !find(op) && (op.degree() > 0 || symmetry_dim(op.k, op.l) >= 2);
  }

  GradedMap<F> get(const OpLabel& op) const {
    if (const auto* g = find(op)) return *g;
    if (known_zero(op)) return zero_operation<F>(op, space, space);
    throw MissingOperation("no matrix for " + render(key(op)));
  }

  const GradedMap<F>& differential() const {
    const auto* g = find(OpLabel::alpha(MultiIndex{1}, MultiIndex{1}));
    if (!g) throw MissingOperation("no differential");
    return *g;
  }
};

// The f-bialgebra of a dg bialgebra: the operations of degree <= 0 (the
// tensor differentials and the v(k)+v(l) = 1 ones) up to |k|+|l| <= bound,
// assembled from d, m and delta through the simplification rules.
template <class F>
OperationTable<F> dg_to_f(const DgBialgebra<F>& alg, int bound) {
  OperationTable<F> t{alg.space, bound, {}};
  Evaluator<F> ev{alg.space, alg.space, &alg.d, {}};
  ev.atom = [&](const OpLabel& op) -> GradedMap<F> {
    if (op.k == MultiIndex{1} && op.l == MultiIndex{1}) return alg.d;
    if (op.k == MultiIndex{2} && op.l == MultiIndex{1}) return alg.m;
    if (op.k == MultiIndex{1} && op.l == MultiIndex{2}) return alg.delta;
    if (op.degree() > 0) return zero_operation<F>(op, alg.space, alg.space);
    throw MissingOperation("no elementary matrix for " + render(op));
  };
  for (const auto& [k, l] : index_pairs(bound)) {
    OpLabel op = OpLabel::alpha(k, l);
    if (op.degree() > 0 || symmetry_dim(k, l) >= 2) continue;
    t.ops.emplace(op, ev(*normal_form(op)));
  }
  return t;
}

struct RelationCheck {
  OpLabel op;
  std::size_t terms = 0;
  bool zero = true;
  std::optional<Entry> offending;
  std::string detail;  // describes the offending entry
};

struct VerifyReport {
  std::vector<RelationCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.zero; });
  }
  const RelationCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.zero) return &c;
    return nullptr;
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.zero; }));
  }
};

namespace detail {

// Runs work(i) for i < n on `jobs` threads; results land at index i.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& work) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          out[i] = work(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class F>
RelationCheck evaluate_relation(const Relation& r, const std::function<GradedMap<F>(const OpLabel&)>& lookup) {
  RelationCheck rc{r.lhs, r.terms.size(), true, std::nullopt, {}};
  std::optional<GradedMap<F>> sum;
  for (const auto& t : r.terms) {
    GradedMap<F> outer = lookup(t.outer), inner = lookup(t.inner);
    if (outer.is_zero() || inner.is_zero()) continue;
    auto term = compose(outer, inner);
    if (!sum)
      sum = term.signed_by(t.sign);
    else
      sum->accumulate(term, t.sign);
  }
  if (sum) {
    if (auto e = sum->first_nonzero()) {
      rc.zero = false;
      rc.offending = e;
      rc.detail = "coefficient " + e->value + " of " + sum->dst().describe(e->row) + " in the image of " +
                  sum->src().describe(e->col);
    }
  }
  return rc;
}

}  // namespace detail

// Evaluates every relation R^k_l with |k|+|l| <= bound.
template <class F>
VerifyReport verify_relations(const OperationTable<F>& table, int bound, int jobs = 1) {
  if (bound > table.bound) throw MissingOperation("table only reaches |k|+|l| <= " + std::to_string(table.bound));
  auto pairs = index_pairs(bound);
  std::function<GradedMap<F>(const OpLabel&)> lookup = [&](const OpLabel& op) { return table.get(op); };
  std::function<RelationCheck(std::size_t)> work = [&](std::size_t i) {
    return detail::evaluate_relation<F>(relation_R(pairs[i].first, pairs[i].second), lookup);
  };
  return {detail::parallel_map<RelationCheck>(pairs.size(), jobs, work)};
}

// Checks that every tabulated operation equals each of its one-step
// simplifications (the V, D and T axioms) as matrices.
template <class F>
VerifyReport check_simplifications(const OperationTable<F>& table) {
  VerifyReport rep;
  Evaluator<F> ev{table.space, table.space, table.find(OpLabel::alpha(MultiIndex{1}, MultiIndex{1})),
                  [&](const OpLabel& op) { return table.get(op); }};
  for (const auto& [op, g] : table.ops)
    for (const auto& rule : applicable_rules(op)) {
      GradedMap<F> diff = ev(*apply_rule(op, rule));
      diff.accumulate(g, SignBit(1));
      RelationCheck rc{op, 1, true, std::nullopt, {}};
      if (auto e = diff.first_nonzero()) {
        rc.zero = false;
        rc.offending = e;
        rc.detail = "simplification rule " + std::to_string(static_cast<int>(rule.rule)) + " at position " +
                    std::to_string(rule.position);
      }
      rep.checks.push_back(std::move(rc));
    }
  return rep;
}

// Components f^k_l of a morphism of f-bialgebras. Components forced by the
// W axioms are expanded; other unlisted components are zero.
template <class F>
struct MorphismTable {
  SpacePtr src, dst;
  std::map<OpLabel, GradedMap<F>> components;

  GradedMap<F> get(const OpLabel& op) const {
    OpLabel f = OpLabel::f(op.k, op.l);
    if (auto it = components.find(f); it != components.end()) return it->second;
    auto rules = applicable_rules(f);
    if (rules.empty()) return zero_operation<F>(f, src, dst);
    Evaluator<F> ev{src, dst, nullptr, [&](const OpLabel& x) { return get(x); }};
    return ev(*apply_rule(f, rules.front()));
  }

  // Tabulates every component with |k|+|l| <= bound.
  void expand(int bound) {
    for (const auto& [k, l] : index_pairs(bound)) {
      OpLabel f = OpLabel::f(k, l);
      if (!components.count(f)) {
        auto g = get(f);
        if (!g.is_zero()) components.emplace(f, std::move(g));
      }
    }
  }
};

template <class F>
MorphismTable<F> identity_morphism(const OperationTable<F>& table) {
  MorphismTable<F> mph{table.space, table.space, {}};
  mph.components.emplace(OpLabel::f(MultiIndex{1}, MultiIndex{1}), GradedMap<F>::identity(TensorSpace(table.space, 1)));
  mph.expand(table.bound);
  return mph;
}

template <class F>
MorphismTable<F> zero_morphism(const OperationTable<F>& src, const OperationTable<F>& dst) {
  return {src.space, dst.space, {}};
}

// Evaluates every relation M^k_l with |k|+|l| <= bound.
template <class F>
VerifyReport verify_morphism(const OperationTable<F>& source, const OperationTable<F>& target,
                             const MorphismTable<F>& mph, int bound, int jobs = 1) {
  auto pairs = index_pairs(bound);
  std::function<GradedMap<F>(const OpLabel&)> lookup = [&](const OpLabel& op) -> GradedMap<F> {
    switch (op.kind) {
      case OpKind::F: return mph.get(op);
      case OpKind::Beta: return target.get(op);
      default: return source.get(op);
    }
  };
  std::function<RelationCheck(std::size_t)> work = [&](std::size_t i) {
    return detail::evaluate_relation<F>(relation_M(pairs[i].first, pairs[i].second), lookup);
  };
  return {detail::parallel_map<RelationCheck>(pairs.size(), jobs, work)};
}

// Bimodule indices whose total plus |l| fits in the bound, with both sides
// present (an empty side is an algebra operation).
inline std::vector<BimoduleIndex> bimodule_indices(int total_size) {
  std::vector<BimoduleIndex> out;
  for (int s = 1; s <= total_size; ++s)
    for (const auto& k : compositions(s)) {
      for (int leaf = 1; leaf <= k.size(); ++leaf) out.push_back(BimoduleIndex::from_total(k, leaf));
      for (std::size_t na = 1; na < k.trees(); ++na) {
        std::vector<int> e(k.entries().begin(), k.entries().end());
        out.push_back(BimoduleIndex({e.begin(), e.begin() + static_cast<long>(na)}, 0,
                                    {e.begin() + static_cast<long>(na), e.end()}));
      }
    }
  return out;
}

// Evaluates the bimodule relations of an f-bialgebra acting on itself.
template <class F>
VerifyReport verify_regular_bimodule(const OperationTable<F>& table, int bound, int jobs = 1) {
  std::vector<std::pair<BimoduleIndex, MultiIndex>> work_items;
  for (const auto& b : bimodule_indices(bound - 1))
    for (int ls = 1; ls + b.total().size() <= bound; ++ls)
      for (const auto& l : compositions(ls)) work_items.push_back({b, l});
  std::function<GradedMap<F>(const OpLabel&)> lookup = [&](const OpLabel& op) { return table.get(op); };
  std::function<RelationCheck(std::size_t)> work = [&](std::size_t i) {
    auto rc = detail::evaluate_relation<F>(relation_bimodule(work_items[i].first, work_items[i].second), lookup);
    return rc;
  };
  return {detail::parallel_map<RelationCheck>(work_items.size(), jobs, work)};
}

}  // namespace biforest
