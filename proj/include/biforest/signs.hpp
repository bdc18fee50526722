#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"

namespace biforest {

// An exponent of -1, i.e. an element of Z/2.
struct SignBit {
  std::uint8_t bit = 0;

  SignBit() = default;
  constexpr SignBit(long long v) : bit(static_cast<std::uint8_t>(((v % 2) + 2) % 2)) {}

  friend SignBit operator+(SignBit a, SignBit b) { return SignBit(a.bit ^ b.bit); }
  SignBit& operator+=(SignBit o) { bit ^= o.bit; return *this; }
  bool operator==(const SignBit&) const = default;
  int value() const { return bit; }
  int sign() const { return bit ? -1 : 1; }
};

// spade_k = sum_i (a - i) k_i mod 2; zero on the empty index.
inline SignBit spadesuit(const MultiIndex& k) {
  long long a = static_cast<long long>(k.trees()), s = 0;
  for (long long i = 1; i <= a; ++i) s += (a - i) * k[static_cast<std::size_t>(i - 1)];
  return SignBit(s);
}

// heart^{k1}_{k0} = sum_h (k1_h - 1) v_{>=h}(k0) mod 2.
inline SignBit heartsuit(const MultiIndex& k1, const MultiIndex& k0) {
  if (static_cast<std::size_t>(k0.size()) != k1.trees())
    throw ArityMismatch("heart: |k0| != n(k1) for k1 = " + k1.str() + ", k0 = " + k0.str());
  long long s = 0;
  for (std::size_t h = 0; h < k1.trees(); ++h)
    s += static_cast<long long>(k1[h] - 1) * vertices_from(k0, static_cast<int>(h) + 1);
  return SignBit(s);
}

// Parity of the permutation p -> image[p] of {0..n-1}.
inline SignBit permutation_signature(std::span<const int> image) {
  std::vector<bool> seen(image.size(), false);
  for (int x : image) {
    if (x < 0 || static_cast<std::size_t>(x) >= image.size() || seen[static_cast<std::size_t>(x)])
      throw NotABijection("map is not a bijection onto {0.." + std::to_string(image.size()) + "}");
    seen[static_cast<std::size_t>(x)] = true;
  }
  long long inv = 0;
  for (std::size_t p = 0; p < image.size(); ++p)
    for (std::size_t q = p + 1; q < image.size(); ++q)
      if (image[p] > image[q]) ++inv;
  return SignBit(inv);
}

// Koszul sign of reordering homogeneous factors: position p of the result
// holds input factor order[p].
inline SignBit koszul_sign(std::span<const int> order, std::span<const int> degrees) {
  long long s = 0;
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = p + 1; q < order.size(); ++q)
      if (order[p] > order[q])
        s += static_cast<long long>(degrees[static_cast<std::size_t>(order[p])]) *
             degrees[static_cast<std::size_t>(order[q])];
  return SignBit(s);
}

// Sign of moving blocks of the given dimensions into the new order.
inline SignBit block_move_sign(std::span<const int> dims, std::span<const int> order) {
  if (order.size() != dims.size()) throw ArityMismatch("block order has the wrong length");
  std::vector<int> img(order.begin(), order.end());
  (void)permutation_signature(img);
  return koszul_sign(order, dims);
}

// Koszul sign of the grid transpose (A^b)^a -> (A^a)^b; degrees row-major.
inline SignBit tau_sign(std::span<const int> degrees, int a, int b) {
  if (static_cast<long long>(degrees.size()) != static_cast<long long>(a) * b)
    throw ShapeMismatch("tau: expected " + std::to_string(a * b) + " degrees");
  long long s = 0;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      for (int ip = 0; ip < i; ++ip)
        for (int jp = j + 1; jp < b; ++jp)
          s += static_cast<long long>(degrees[static_cast<std::size_t>(i * b + j)]) *
               degrees[static_cast<std::size_t>(ip * b + jp)];
  return SignBit(s);
}

// Sign (-1, 0 or 1) of the determinant of a square integer matrix given by
// columns, via fraction-free elimination.
inline int determinant_sign(const std::vector<std::vector<long long>>& columns) {
  std::size_t n = columns.size();
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (columns[c].size() != n) throw ShapeMismatch("determinant of a non-square matrix");
    for (std::size_t r = 0; r < n; ++r) m[r][c] = static_cast<long>(columns[c][r]);
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t piv = p;
    while (piv < n && m[piv][p] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != p) {
      std::swap(m[piv], m[p]);
      sign = -sign;
    }
    for (std::size_t r = p + 1; r < n; ++r) {
      for (std::size_t c = p + 1; c < n; ++c) m[r][c] = (m[r][c] * m[p][p] - m[r][p] * m[p][c]) / prev;
      m[r][p] = 0;
    }
    prev = m[p][p];
  }
  if (n == 0) return 1;
  return sgn(m[n - 1][n - 1]) * sign;
}

struct GluingSigns {
  SignBit rho;   // K0 x K1 face of K
  SignBit rho0;  // J0 x K1 face of J
  SignBit rho1;  // K0 x J1 face of J
};

namespace detail {

inline void check_gluable(const MultiIndex& k0, const MultiIndex& l0, const MultiIndex& k1,
                          const MultiIndex& l1) {
  if (static_cast<std::size_t>(k0.size()) != k1.trees())
    throw ArityMismatch("k1 # k0 undefined: |k0| = " + std::to_string(k0.size()) + ", n(k1) = " +
                        std::to_string(k1.trees()));
  if (static_cast<std::size_t>(l1.size()) != l0.trees())
    throw ArityMismatch("l0 # l1 undefined: |l1| = " + std::to_string(l1.size()) + ", n(l0) = " +
                        std::to_string(l0.trees()));
}

}  // namespace detail

// Signs for (k,l) = (k1,l1) # (k0,l0), i.e. k = k1 # k0 and l = l0 # l1.
inline GluingSigns rho(const MultiIndex& k0, const MultiIndex& l0, const MultiIndex& k1,
                       const MultiIndex& l1) {
  detail::check_gluable(k0, l0, k1, l1);
  long long x0 = k0.vertices(), y0 = l0.vertices(), x1 = k1.vertices(), y1 = l1.vertices();
  SignBit base = heartsuit(k1, k0) + heartsuit(l0, l1) + SignBit(y0 * (x1 + y1));
  return {base + SignBit(x0 + y0 + 1), base + SignBit(x0 + y0), base + SignBit(1)};
}

// Sign of a relation term alpha^{k0}_{l0} o alpha^{k1}_{l1}, including the
// terms where one factor is the (tensor) differential.
inline SignBit relation_sign(const MultiIndex& k0, const MultiIndex& l0, const MultiIndex& k1,
                             const MultiIndex& l1) {
  detail::check_gluable(k0, l0, k1, l1);
  int c0 = symmetry_dim(k0, l0), c1 = symmetry_dim(k1, l1);
  if (c0 == 0) return SignBit(1);
  if (c1 == 0) return SignBit(glue(k1, k0).vertices() + glue(l0, l1).vertices() + 1);
  return rho(k0, l0, k1, l1).rho;
}

enum class GluingMap { K, J0, J1 };

// Coordinates of J^{k0}_{l0} and J^{k1}_{l1} inside J^k_l (k-vertices first,
// then l-vertices), as 0-based positions.
struct SplitCoordinates {
  int dim = 0;
  std::vector<int> lower;  // J0 coordinates: Vert(k0) then Vert(l0)
  std::vector<int> upper;  // J1 coordinates: Vert(k1) then Vert(l1)
};

inline SplitCoordinates split_coordinates(const MultiIndex& k0, const MultiIndex& l0,
                                          const MultiIndex& k1, const MultiIndex& l1) {
  detail::check_gluable(k0, l0, k1, l1);
  auto gk = glued_vertices(k1, k0);
  auto gl = glued_vertices(l0, l1);
  int vk = glue(k1, k0).vertices();
  SplitCoordinates s;
  s.dim = vk + glue(l0, l1).vertices();
  s.lower = gk.lower;
  for (int r : gl.upper) s.lower.push_back(vk + r);
  s.upper = gk.upper;
  for (int r : gl.lower) s.upper.push_back(vk + r);
  return s;
}

namespace detail {

using Column = std::vector<long long>;

inline Column embed(const std::vector<int>& coords, const Column& v, int dim) {
  Column out(static_cast<std::size_t>(dim), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) out[static_cast<std::size_t>(coords[i])] = v[i];
  return out;
}

// Basis of the sum-zero subspace of R^n, oriented so that (1,...,1) followed
// by it is a positive basis.
inline std::vector<Column> oriented_complement(int n) {
  std::vector<Column> basis;
  for (int j = 0; j + 1 < n; ++j) {
    Column c(static_cast<std::size_t>(n), 0);
    c[static_cast<std::size_t>(j)] = 1;
    c[static_cast<std::size_t>(j + 1)] = -1;
    basis.push_back(c);
  }
  std::vector<Column> full{Column(static_cast<std::size_t>(n), 1)};
  full.insert(full.end(), basis.begin(), basis.end());
  if (!basis.empty() && determinant_sign(full) < 0)
    for (auto& x : basis[0]) x = -x;
  return basis;
}

}  // namespace detail

// Orientation of a gluing map computed from explicit oriented bases and a
// determinant; needs c = 1 on every factor that is quotiented.
inline SignBit orientation_oracle(const MultiIndex& k0, const MultiIndex& l0, const MultiIndex& k1,
                                  const MultiIndex& l1, GluingMap which) {
  auto sc = split_coordinates(k0, l0, k1, l1);
  bool need0 = which != GluingMap::J0, need1 = which != GluingMap::J1;
  if (need0 && symmetry_dim(k0, l0) != 1)
    throw SymmetryMismatch("lower factor " + k0.str() + "," + l0.str() + " has c != 1");
  if (need1 && symmetry_dim(k1, l1) != 1)
    throw SymmetryMismatch("upper factor " + k1.str() + "," + l1.str() + " has c != 1");
  int d0 = static_cast<int>(sc.lower.size()), d1 = static_cast<int>(sc.upper.size());
  using detail::Column;
  Column ones0(static_cast<std::size_t>(d0), 1), ones1(static_cast<std::size_t>(d1), 1);
  Column v0 = detail::embed(sc.lower, ones0, sc.dim);
  Column v1 = detail::embed(sc.upper, ones1, sc.dim);
  auto std_basis = [&](const std::vector<int>& coords) {
    std::vector<Column> out;
    for (int c : coords) {
      Column e(static_cast<std::size_t>(sc.dim), 0);
      e[static_cast<std::size_t>(c)] = 1;
      out.push_back(e);
    }
    return out;
  };
  auto k_basis = [&](const std::vector<int>& coords) {
    std::vector<Column> out;
    for (const auto& b : detail::oriented_complement(static_cast<int>(coords.size())))
      out.push_back(detail::embed(coords, b, sc.dim));
    return out;
  };
  std::vector<Column> cols;
  auto append = [&](const std::vector<Column>& v) { cols.insert(cols.end(), v.begin(), v.end()); };
  switch (which) {
    case GluingMap::K: {
      Column v(static_cast<std::size_t>(sc.dim), 1);
      cols = {v, v1};
      append(k_basis(sc.lower));
      append(k_basis(sc.upper));
      break;
    }
    case GluingMap::J0:
      cols = {v1};
      append(std_basis(sc.lower));
      append(k_basis(sc.upper));
      break;
    case GluingMap::J1: {
      Column m = v0;
      for (auto& x : m) x = -x;
      cols = {m};
      append(k_basis(sc.lower));
      append(std_basis(sc.upper));
      break;
    }
  }
  int s = determinant_sign(cols);
  if (s == 0) throw SymmetryMismatch("degenerate gluing map");
  return SignBit(s < 0 ? 1 : 0);
}

}  // namespace biforest
