#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "errors.hpp"

namespace biforest {

// A multi-index k = (k_1, ..., k_a) of positive integers, the type of a
// planar forest with a trees where tree i has k_i leaves.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(const std::vector<int>& entries) : e_(entries.begin(), entries.end()) {
    if (e_.empty()) throw InvalidIndex("multi-index must have at least one entry");
    for (int x : e_)
      if (x < 1) throw InvalidIndex("multi-index entries must be >= 1, got " + std::to_string(x));
  }

  MultiIndex(std::initializer_list<int> il) : MultiIndex(std::vector<int>(il)) {}

  // tilde() of a vertical index has no entries; this is the only way to get one.
  static MultiIndex empty() { return MultiIndex(); }

  static MultiIndex vertical(int a) {
    if (a < 1) throw InvalidIndex("vertical index needs a >= 1");
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(a), 1));
  }

  bool is_empty() const { return e_.empty(); }
  std::size_t trees() const { return e_.size(); }
  int size() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  int vertices() const { return size() - static_cast<int>(trees()); }
  int nonvertical() const {
    return static_cast<int>(std::count_if(e_.begin(), e_.end(), [](int x) { return x >= 2; }));
  }
  bool is_vertical() const { return !e_.empty() && nonvertical() == 0; }
  bool is_almost_vertical() const {
    return nonvertical() > 0 && std::all_of(e_.begin(), e_.end(), [](int x) { return x <= 2; });
  }

  MultiIndex tilde() const {
    MultiIndex r;
    for (int x : e_)
      if (x >= 2) r.e_.push_back(x);
    return r;
  }

  // Vert(k) = {1..|k|} minus the partial sums k_1, k_1+k_2, ..., |k|.
  std::vector<int> vertex_set() const {
    std::vector<int> out;
    int s = 0;
    for (int x : e_) {
      for (int j = 1; j < x; ++j) out.push_back(s + j);
      s += x;
    }
    return out;
  }

  int operator[](std::size_t i) const { return e_.at(i); }
  std::span<const int> entries() const { return {e_.data(), e_.size()}; }

  std::strong_ordering operator<=>(const MultiIndex& o) const {
    return std::lexicographical_compare_three_way(e_.begin(), e_.end(), o.e_.begin(), o.e_.end());
  }
  bool operator==(const MultiIndex& o) const { return std::equal(e_.begin(), e_.end(), o.e_.begin(), o.e_.end()); }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

 private:
  // short indices stay inline
  boost::container::small_vector<int, 8> e_;
};

struct Stats {
  int size;
  int trees;
  int vertices;
  int nonvertical;
  MultiIndex tilde;
  std::vector<int> vert;
};

inline Stats stats(const MultiIndex& k) {
  return {k.size(), static_cast<int>(k.trees()), k.vertices(), k.nonvertical(), k.tilde(),
          k.vertex_set()};
}

// k1 # k0: glue k1 (above) onto the leaves of k0. Requires |k0| = n(k1).
inline MultiIndex glue(const MultiIndex& k1, const MultiIndex& k0) {
  if (k1.is_empty() || k0.is_empty()) throw InvalidIndex("cannot glue an empty index");
  if (static_cast<std::size_t>(k0.size()) != k1.trees())
    throw ArityMismatch("glue " + k1.str() + " # " + k0.str() + ": |k0| = " +
                        std::to_string(k0.size()) + " but n(k1) = " + std::to_string(k1.trees()));
  std::vector<int> out;
  std::size_t pos = 0;
  for (int c : k0.entries()) {
    int s = 0;
    for (int j = 0; j < c; ++j) s += k1[pos++];
    out.push_back(s);
  }
  return MultiIndex(std::move(out));
}

// 1-based leaf coordinate s_k(i, i') = k_1 + ... + k_{i-1} + i'.
inline int leaf_coord(const MultiIndex& k, int i, int ip) {
  if (i < 1 || static_cast<std::size_t>(i) > k.trees() || ip < 1 || ip > k[i - 1])
    throw OutOfRange("leaf (" + std::to_string(i) + "," + std::to_string(ip) + ") not in " + k.str());
  int s = 0;
  for (int j = 0; j < i - 1; ++j) s += k[j];
  return s + ip;
}

// Inverse of leaf_coord: h -> (i, i'), both 1-based.
inline std::pair<int, int> leaf_position(const MultiIndex& k, int h) {
  if (h < 1 || h > k.size()) throw OutOfRange("leaf " + std::to_string(h) + " not in " + k.str());
  int i = 0;
  while (h > k[i]) h -= k[i++];
  return {i + 1, h};
}

// v_{>=h}(k): number of elements of Vert(k) that are >= h.
inline int vertices_from(const MultiIndex& k, int h) {
  auto v = k.vertex_set();
  return static_cast<int>(std::count_if(v.begin(), v.end(), [h](int x) { return x >= h; }));
}

// Dimension c(k,l) of the translation symmetry group acting on the heights.
inline int symmetry_dim(const MultiIndex& k, const MultiIndex& l) {
  bool kv = k.is_vertical(), lv = l.is_vertical();
  if (kv && lv) return 0;
  if (lv) return k.nonvertical();
  if (kv) return l.nonvertical();
  return 1;
}

struct Splitting {
  MultiIndex lower;                  // k0
  MultiIndex upper;                  // k1
  std::vector<int> lower_vertices;   // Vert(k) \ Vert(k1), identified with Vert(k0)
  std::vector<int> upper_vertices;   // Vert(k1), a subset of Vert(k)
};

namespace detail {

inline Splitting splitting_from_upper_set(const MultiIndex& k, const std::vector<int>& upper) {
  std::vector<bool> inside(static_cast<std::size_t>(k.size()) + 1, false);
  for (int p : upper) inside[static_cast<std::size_t>(p)] = true;
  std::vector<int> k1, k0, lower;
  int run = 0, trees_in_root = 0, pos = 0;
  for (int x : k.entries()) {
    for (int j = 1; j <= x; ++j) {
      ++pos;
      ++run;
      bool cut = (j == x) || !inside[static_cast<std::size_t>(pos)];
      if (j < x && !inside[static_cast<std::size_t>(pos)]) lower.push_back(pos);
      if (cut) {
        k1.push_back(run);
        run = 0;
        ++trees_in_root;
      }
    }
    k0.push_back(trees_in_root);
    trees_in_root = 0;
  }
  return {MultiIndex(k0), MultiIndex(k1), lower, upper};
}

}  // namespace detail

// All 2^{v(k)} ways of writing k = k1 # k0, ordered lexicographically by the
// subset Vert(k) \ Vert(k1) (as a sorted list).
inline std::vector<Splitting> splittings(const MultiIndex& k) {
  auto vert = k.vertex_set();
  std::size_t n = vert.size();
  if (n >= 31) throw OutOfRange("too many vertices to enumerate splittings");
  std::vector<std::vector<int>> lowers;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s;
    for (std::size_t b = 0; b < n; ++b)
      if (mask >> b & 1) s.push_back(vert[b]);
    lowers.push_back(std::move(s));
  }
  std::sort(lowers.begin(), lowers.end());
  std::vector<Splitting> out;
  out.reserve(lowers.size());
  for (const auto& low : lowers) {
    std::vector<int> up;
    std::set_difference(vert.begin(), vert.end(), low.begin(), low.end(), std::back_inserter(up));
    out.push_back(detail::splitting_from_upper_set(k, up));
  }
  return out;
}

// For k = k1 # k0, the 0-based ranks in Vert(k) of the elements of Vert(k0)
// (via the order-preserving identification with Vert(k) \ Vert(k1)) and of
// Vert(k1) (a literal subset).
struct GluedVertices {
  std::vector<int> lower;
  std::vector<int> upper;
};

inline GluedVertices glued_vertices(const MultiIndex& k1, const MultiIndex& k0) {
  MultiIndex k = glue(k1, k0);
  auto vk = k.vertex_set();
  auto v1 = k1.vertex_set();
  GluedVertices g;
  for (std::size_t r = 0; r < vk.size(); ++r) {
    if (std::binary_search(v1.begin(), v1.end(), vk[r]))
      g.upper.push_back(static_cast<int>(r));
    else
      g.lower.push_back(static_cast<int>(r));
  }
  return g;
}

// Index of a bimodule operation: (k^l | eps | k^r).
struct BimoduleIndex {
  std::vector<int> left;
  int eps = 0;
  std::vector<int> right;

  BimoduleIndex() = default;
  BimoduleIndex(std::vector<int> l, int e, std::vector<int> r)
      : left(std::move(l)), eps(e), right(std::move(r)) {
    validate();
  }

  void validate() const {
    if (eps != 0 && eps != 1) throw InvalidIndex("bimodule eps must be 0 or 1");
    if (eps == 0) {
      if (left.empty() && right.empty()) throw InvalidIndex("bimodule index with eps=0 needs a side");
      for (int x : left)
        if (x < 1) throw InvalidIndex("bimodule entries must be >= 1 when eps = 0");
      for (int x : right)
        if (x < 1) throw InvalidIndex("bimodule entries must be >= 1 when eps = 0");
      return;
    }
    if (left.empty() || right.empty())
      throw InvalidIndex("bimodule index with eps=1 needs k^l_{a+1} and k^r_0 entries");
    for (std::size_t i = 0; i + 1 < left.size(); ++i)
      if (left[i] < 1) throw InvalidIndex("bimodule entries must be >= 1");
    for (std::size_t i = 1; i < right.size(); ++i)
      if (right[i] < 1) throw InvalidIndex("bimodule entries must be >= 1");
    if (left.back() < 0 || right.front() < 0) throw InvalidIndex("bimodule entries must be >= 0");
  }

  MultiIndex total() const {
    std::vector<int> t;
    if (eps == 0) {
      t = left;
      t.insert(t.end(), right.begin(), right.end());
    } else {
      t.assign(left.begin(), left.end() - 1);
      t.push_back(left.back() + 1 + right.front());
      t.insert(t.end(), right.begin() + 1, right.end());
    }
    return MultiIndex(std::move(t));
  }

  // 1-based leaf position of the module input in total() (eps = 1 only).
  int module_leaf() const {
    if (eps != 1) throw InvalidIndex("module_leaf needs eps = 1");
    return std::accumulate(left.begin(), left.end(), 0) + 1;
  }

  // Rebuild from a total index and the module leaf position.
  static BimoduleIndex from_total(const MultiIndex& k, int leaf) {
    auto [i, ip] = leaf_position(k, leaf);
    std::vector<int> l(k.entries().begin(), k.entries().begin() + (i - 1));
    l.push_back(ip - 1);
    std::vector<int> r{k[static_cast<std::size_t>(i - 1)] - ip};
    r.insert(r.end(), k.entries().begin() + i, k.entries().end());
    return BimoduleIndex(std::move(l), 1, std::move(r));
  }

  auto operator<=>(const BimoduleIndex&) const = default;
  bool operator==(const BimoduleIndex&) const = default;

  std::string str() const {
    auto side = [](const std::vector<int>& v) {
      if (v.empty()) return std::string("0");
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    return "(" + side(left) + "|" + std::to_string(eps) + "|" + side(right) + ")";
  }
};

struct BimoduleSplitting {
  BimoduleIndex lower;  // b0
  BimoduleIndex upper;  // b1
};

// Splittings of a bimodule index, in bijection with the splittings of its total.
inline std::vector<BimoduleSplitting> bimodule_splittings(const BimoduleIndex& b) {
  std::vector<BimoduleSplitting> out;
  if (b.eps == 1) {
    int leaf = b.module_leaf();
    for (const auto& s : splittings(b.total())) {
      auto b1 = BimoduleIndex::from_total(s.upper, leaf);
      int tree = leaf_position(s.upper, leaf).first;
      auto b0 = BimoduleIndex::from_total(s.lower, tree);
      out.push_back({b0, b1});
    }
    return out;
  }
  std::size_t na = b.left.size();
  for (const auto& s : splittings(b.total())) {
    std::vector<int> k0l(s.lower.entries().begin(), s.lower.entries().begin() + na);
    std::vector<int> k0r(s.lower.entries().begin() + na, s.lower.entries().end());
    std::size_t n1l = static_cast<std::size_t>(std::accumulate(k0l.begin(), k0l.end(), 0));
    std::vector<int> k1l(s.upper.entries().begin(), s.upper.entries().begin() + n1l);
    std::vector<int> k1r(s.upper.entries().begin() + n1l, s.upper.entries().end());
    out.push_back({BimoduleIndex(k0l, 0, k0r), BimoduleIndex(k1l, 0, k1r)});
  }
  return out;
}

// Every multi-index of size n, in lexicographic order.
inline std::vector<MultiIndex> compositions(int n) {
  std::vector<MultiIndex> out;
  if (n < 1) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int x = 1; x <= rest; ++x) {
      cur.push_back(x);
      self(self, rest - x);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

}  // namespace biforest
