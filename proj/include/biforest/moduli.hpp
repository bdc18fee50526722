#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "forest.hpp"
#include "multiindex.hpp"
#include "rational.hpp"
#include "signs.hpp"

namespace biforest {

struct Dims {
  int J;
  std::optional<int> K;  // only when c(k,l) = 1
  int Ktilde;
  int c;
};

inline Dims dims(const MultiIndex& k, const MultiIndex& l) {
  int j = k.vertices() + l.vertices();
  int c = symmetry_dim(k, l);
  return {j, c == 1 ? std::optional<int>(j - 1) : std::nullopt, j - c, c};
}

// A point of J^k_l: heights on Vert(k) followed by heights on Vert(l).
struct ModuliPoint {
  MultiIndex k, l;
  std::vector<Rational> heights;

  ModuliPoint(MultiIndex k_, MultiIndex l_, std::vector<Rational> h)
      : k(std::move(k_)), l(std::move(l_)), heights(std::move(h)) {
    if (heights.size() != static_cast<std::size_t>(k.vertices() + l.vertices()))
      throw HeightMismatch("point of J" + k.str() + l.str() + " needs " +
                           std::to_string(k.vertices() + l.vertices()) + " heights");
    for (auto& x : heights) x.canonicalize();
  }

  std::vector<Rational> up_heights() const {
    return {heights.begin(), heights.begin() + k.vertices()};
  }
  std::vector<Rational> down_heights() const {
    return {heights.begin() + k.vertices(), heights.end()};
  }
};

// Supports (as J coordinates) of the basis vectors of the symmetry group G.
inline std::vector<std::vector<int>> symmetry_blocks(const MultiIndex& k, const MultiIndex& l) {
  int c = symmetry_dim(k, l);
  std::vector<std::vector<int>> out;
  if (c == 0) return out;
  int vk = k.vertices(), dim = vk + l.vertices();
  auto per_tree = [&](const MultiIndex& m, int off) {
    int pos = off;
    for (int x : m.entries()) {
      if (x >= 2) {
        std::vector<int> b;
        for (int j = 0; j < x - 1; ++j) b.push_back(pos + j);
        out.push_back(b);
      }
      pos += x - 1;
    }
  };
  bool kv = k.is_vertical(), lv = l.is_vertical();
  if (lv && !kv)
    per_tree(k, 0);
  else if (kv && !lv)
    per_tree(l, vk);
  else {
    std::vector<int> all;
    for (int i = 0; i < dim; ++i) all.push_back(i);
    out.push_back(all);
  }
  return out;
}

// Representative of the class of p in J/G with zero mean on every G block.
inline ModuliPoint project(const ModuliPoint& p) {
  ModuliPoint q = p;
  for (const auto& b : symmetry_blocks(p.k, p.l)) {
    Rational mean = 0;
    for (int i : b) mean += p.heights[static_cast<std::size_t>(i)];
    mean /= static_cast<long>(b.size());
    for (int i : b) q.heights[static_cast<std::size_t>(i)] -= mean;
  }
  return q;
}

inline ModuliPoint project_K(const ModuliPoint& p) {
  if (symmetry_dim(p.k, p.l) != 1) throw SymmetryMismatch("K" + p.k.str() + p.l.str() + " needs c = 1");
  return project(p);
}

// The point of J^k_l obtained by placing (k1,l1) at height h above (k0,l0).
inline ModuliPoint glue_point(const ModuliPoint& lower, const ModuliPoint& upper, const Rational& h) {
  auto sc = split_coordinates(lower.k, lower.l, upper.k, upper.l);
  std::vector<Rational> out(static_cast<std::size_t>(sc.dim));
  for (std::size_t i = 0; i < sc.lower.size(); ++i)
    out[static_cast<std::size_t>(sc.lower[i])] = lower.heights[i];
  for (std::size_t i = 0; i < sc.upper.size(); ++i)
    out[static_cast<std::size_t>(sc.upper[i])] = upper.heights[i] + h;
  return ModuliPoint(glue(upper.k, lower.k), glue(lower.l, upper.l), std::move(out));
}

enum class FaceKind { K, J0, J1 };

struct Face {
  MultiIndex k0, l0, k1, l1;
  FaceKind kind;
  SignBit sign;
};

// Codimension-one faces of K^k_l (kind K) or of J^k_l (kinds J0, J1), in
// lexicographic order of (k0, l0, k1, l1).
inline std::vector<Face> boundary_faces(const MultiIndex& k, const MultiIndex& l, bool of_J = false) {
  if (!of_J && symmetry_dim(k, l) != 1)
    throw SymmetryMismatch("K" + k.str() + l.str() + " is only defined for c = 1");
  std::vector<Face> out;
  for (const auto& sk : splittings(k))
    for (const auto& sl : splittings(l)) {
      const auto &k0 = sk.lower, &k1 = sk.upper, &l0 = sl.upper, &l1 = sl.lower;
      int c0 = symmetry_dim(k0, l0), c1 = symmetry_dim(k1, l1);
      auto r = rho(k0, l0, k1, l1);
      if (!of_J) {
        if (c0 == 1 && c1 == 1) out.push_back({k0, l0, k1, l1, FaceKind::K, r.rho});
      } else {
        if (c1 == 1) out.push_back({k0, l0, k1, l1, FaceKind::J0, r.rho0});
        if (c0 == 1) out.push_back({k0, l0, k1, l1, FaceKind::J1, r.rho1});
      }
    }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return std::tie(a.k0, a.l0, a.k1, a.l1, a.kind) < std::tie(b.k0, b.l0, b.k1, b.l1, b.kind);
  });
  return out;
}

// The biforest (U^k, D_l) at a point of J.
struct Biforest {
  HeightedForest up;
  HeightedForest down;
};

inline Biforest realize_point(const ModuliPoint& p) {
  return {from_heights(p.k, p.up_heights()), descending_from_heights(p.l, p.down_heights())};
}

}  // namespace biforest
