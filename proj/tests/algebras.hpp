#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "biforest/dgbialgebra.hpp"
#include "biforest/field.hpp"

namespace testalg {

using namespace biforest;

// The graded-commutative algebra on primitive generators with square zero,
// basis the subsets of generators; d is a derivation with d(g_i) = g_{dgen[i]}.
// Over Q this is a bialgebra when every generator is odd; over F2 always.
template <class F>
DgBialgebra<F> truncated_primitive(const std::vector<int>& degrees, const std::vector<std::optional<int>>& dgen = {},
                                   const std::vector<std::string>& names = {}) {
  int n = static_cast<int>(degrees.size());
  int dim = 1 << n;
  auto sp = std::make_shared<GradedSpace>();
  for (int s = 0; s < dim; ++s) {
    int deg = 0;
    std::string nm;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) {
        deg += degrees[static_cast<std::size_t>(i)];
        nm += names.empty() ? "x" + std::to_string(i + 1) : names[static_cast<std::size_t>(i)];
      }
    sp->names.push_back(nm.empty() ? "1" : nm);
    sp->degrees.push_back(deg);
  }
  SpacePtr space = sp;
  // sign of x_S x_T = sign x_{S u T}
  auto merge_sign = [&](int S, int T) {
    long long e = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if ((S >> i & 1) && (T >> j & 1)) e += static_cast<long long>(degrees[static_cast<std::size_t>(i)]) * degrees[static_cast<std::size_t>(j)];
    return e % 2 ? -F::one() : F::one();
  };
  TensorSpace a1(space, 1), a2(space, 2);
  GradedMap<F> m(a2, a1, 0), delta(a1, a2, 0), d(a1, a1, -1);
  for (int S = 0; S < dim; ++S)
    for (int T = 0; T < dim; ++T)
      if (!(S & T)) m.add(static_cast<std::size_t>(S | T), static_cast<std::size_t>(S * dim + T), merge_sign(S, T));
  for (int S = 0; S < dim; ++S)
    for (int T = S;; T = (T - 1) & S) {
      delta.add(static_cast<std::size_t>(T * dim + (S ^ T)), static_cast<std::size_t>(S), merge_sign(T, S ^ T));
      if (T == 0) break;
    }
  // d(x_{i1}...x_{ir}) = sum_p (-1)^{|x_{i1}|+...} x_{i1}...d(x_{ip})...x_{ir}
  for (int S = 0; S < dim; ++S) {
    std::vector<int> word;
    for (int i = 0; i < n; ++i)
      if (S >> i & 1) word.push_back(i);
    int before = 0;
    for (std::size_t p = 0; p < word.size(); ++p) {
      int i = word[p];
      auto tgt = i < static_cast<int>(dgen.size()) ? dgen[static_cast<std::size_t>(i)] : std::nullopt;
      if (tgt) {
        int acc = 0;
        F sg = before % 2 ? -F::one() : F::one();
        bool zero = false;
        for (std::size_t q = 0; q < word.size() && !zero; ++q) {
          int g = q == p ? *tgt : word[q];
          if (acc >> g & 1) zero = true;
          else {
            sg = sg * merge_sign(acc, 1 << g);
            acc |= 1 << g;
          }
        }
        if (!zero) d.add(static_cast<std::size_t>(acc), static_cast<std::size_t>(S), sg);
      }
      before += degrees[static_cast<std::size_t>(i)];
    }
  }
  return {space, d, m, delta};
}

// Lambda[x], |x| = 1, over Q.
inline DgBialgebra<Q> exterior() { return truncated_primitive<Q>({1}, {}, {"x"}); }

// Lambda[x, y], |x| = |y| = 1, over Q.
inline DgBialgebra<Q> exterior2() { return truncated_primitive<Q>({1, 1}, {}, {"x", "y"}); }

// F2[y]/(y^2) (x) Lambda[x] with dx = y over F2.
inline DgBialgebra<F2> dual_numbers() { return truncated_primitive<F2>({1, 0}, {1, std::nullopt}, {"x", "y"}); }

// The group algebra of Z/2 over F2.
inline DgBialgebra<F2> group_z2() {
  auto sp = std::make_shared<GradedSpace>(GradedSpace{{"e", "g"}, {0, 0}});
  SpacePtr space = sp;
  TensorSpace a1(space, 1), a2(space, 2);
  GradedMap<F2> m(a2, a1, 0), delta(a1, a2, 0), d(a1, a1, -1);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m.add(static_cast<std::size_t>(a ^ b), static_cast<std::size_t>(2 * a + b), F2::one());
  for (int a = 0; a < 2; ++a) delta.add(static_cast<std::size_t>(3 * a), static_cast<std::size_t>(a), F2::one());
  return {space, d, m, delta};
}

// span{a, u, w} over Q with |u| = 1, du = w, a group-like idempotent and
// u, w primitive relative to a; all other products vanish.
inline DgBialgebra<Q> pointed_coalgebra() {
  auto sp = std::make_shared<GradedSpace>(GradedSpace{{"a", "u", "w"}, {0, 1, 0}});
  SpacePtr space = sp;
  TensorSpace a1(space, 1), a2(space, 2);
  GradedMap<Q> m(a2, a1, 0), delta(a1, a2, 0), d(a1, a1, -1);
  m.add(0, 0, Q(1L));
  delta.add(0, 0, Q(1L));
  for (std::size_t x : {1, 2}) {
    delta.add(x * 3, x, Q(1L));
    delta.add(x, x, Q(1L));
  }
  d.add(2, 1, Q(1L));
  return {space, d, m, delta};
}

// Lambda[x] with delta(x) = 2 x(x)1 + 1(x)x: not coassociative.
inline DgBialgebra<Q> corrupted_exterior() {
  auto alg = exterior();
  alg.delta.add(2, 1, Q(1L));  // x(x)1 has index 1*2+0
  return alg;
}

}  // namespace testalg
