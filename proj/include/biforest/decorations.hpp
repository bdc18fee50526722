#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "multiindex.hpp"
#include "relgen.hpp"

namespace biforest {

// Objects are opaque integer ids; a monoid gives them names and a product.
using Label = int;

class Monoid {
 public:
  virtual ~Monoid() = default;
  virtual Label mul(Label a, Label b) const = 0;
  virtual std::string name(Label x) const = 0;
};

// A finite monoid given by its multiplication table; associativity is checked.
class TableMonoid : public Monoid {
 public:
  TableMonoid(std::vector<std::string> names, std::vector<std::vector<Label>> table)
      : names_(std::move(names)), table_(std::move(table)) {
    int n = static_cast<int>(names_.size());
    if (static_cast<int>(table_.size()) != n) throw LabelMismatch("multiplication table has the wrong size");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n) throw LabelMismatch("multiplication table has the wrong size");
      for (Label x : row)
        if (x < 0 || x >= n) throw LabelMismatch("multiplication table entry out of range");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw LabelMismatch("product is not associative on (" + names_[static_cast<std::size_t>(a)] + "," +
                                names_[static_cast<std::size_t>(b)] + "," + names_[static_cast<std::size_t>(c)] + ")");
  }

  static TableMonoid cyclic(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<Label>> t(static_cast<std::size_t>(n), std::vector<Label>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
      names.push_back(std::to_string(a));
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    }
    return TableMonoid(std::move(names), std::move(t));
  }

  int size() const { return static_cast<int>(names_.size()); }
  Label mul(Label a, Label b) const override { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  std::string name(Label x) const override { return names_[static_cast<std::size_t>(x)]; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Label>> table_;
};

// Words over an alphabet under concatenation.
class FreeMonoid : public Monoid {
 public:
  Label word(const std::string& w) const {
    std::lock_guard<std::mutex> g(mu_);
    auto [it, fresh] = ids_.emplace(w, static_cast<Label>(words_.size()));
    if (fresh) words_.push_back(w);
    return it->second;
  }
  Label mul(Label a, Label b) const override { return word(name(a) + name(b)); }
  std::string name(Label x) const override {
    std::lock_guard<std::mutex> g(mu_);
    return words_.at(static_cast<std::size_t>(x));
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<std::string, Label> ids_;
  mutable std::vector<std::string> words_;
};

// A multi-index l with labels L_{j,j'}, 1 <= j <= b, 0 <= j' <= l_j, stored
// in reading order.
struct Decoration {
  MultiIndex l;
  std::vector<Label> flat;

  Decoration(MultiIndex l_, std::vector<Label> flat_) : l(std::move(l_)), flat(std::move(flat_)) {
    if (flat.size() != count_for(l)) throw ArityMismatch("decoration of " + l.str() + " needs |l| + n(l) labels");
  }

  static std::size_t count_for(const MultiIndex& l) { return static_cast<std::size_t>(l.size()) + l.trees(); }

  static Decoration from_flat(const MultiIndex& l, std::vector<Label> flat) { return Decoration(l, std::move(flat)); }

  static Decoration from_rows(const MultiIndex& l, const std::vector<std::vector<Label>>& rows) {
    if (rows.size() != l.trees()) throw ArityMismatch("decoration of " + l.str() + " needs one label row per tree");
    std::vector<Label> flat;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (static_cast<int>(rows[j].size()) != l[j] + 1)
        throw ArityMismatch("tree " + std::to_string(j + 1) + " of " + l.str() + " needs " + std::to_string(l[j] + 1) +
                            " labels");
      flat.insert(flat.end(), rows[j].begin(), rows[j].end());
    }
    return Decoration(l, std::move(flat));
  }

  // 1-based tree index as in the usual notation
  Label at(int j, int jp) const {
    std::size_t p = 0;
    for (int t = 1; t < j; ++t) p += static_cast<std::size_t>(l[static_cast<std::size_t>(t - 1)]) + 1;
    return flat[p + static_cast<std::size_t>(jp)];
  }
  std::size_t count() const { return flat.size(); }

  std::vector<std::vector<Label>> rows() const {
    std::vector<std::vector<Label>> out;
    std::size_t p = 0;
    for (int x : l.entries()) {
      out.emplace_back(flat.begin() + static_cast<long>(p), flat.begin() + static_cast<long>(p) + x + 1);
      p += static_cast<std::size_t>(x) + 1;
    }
    return out;
  }

  bool operator==(const Decoration&) const = default;
};

using LabelPair = std::pair<Label, Label>;

// In: one pair (L_{j,0}, L_{j,l_j}) per tree; Out: one pair per leaf.
inline std::vector<LabelPair> hom_grid_in(const Decoration& d) {
  std::vector<LabelPair> out;
  std::size_t p = 0;
  for (int x : d.l.entries()) {
    out.push_back({d.flat[p], d.flat[p + static_cast<std::size_t>(x)]});
    p += static_cast<std::size_t>(x) + 1;
  }
  return out;
}

inline std::vector<LabelPair> hom_grid_out(const Decoration& d) {
  std::vector<LabelPair> out;
  std::size_t p = 0;
  for (int x : d.l.entries()) {
    for (int q = 1; q <= x; ++q) out.push_back({d.flat[p + static_cast<std::size_t>(q) - 1], d.flat[p + static_cast<std::size_t>(q)]});
    p += static_cast<std::size_t>(x) + 1;
  }
  return out;
}

namespace detail {

// l = l0 # l1 without building the glued index.
inline bool glues_to(const MultiIndex& l0, const MultiIndex& l1, const MultiIndex& l) {
  if (l1.size() != static_cast<int>(l0.trees()) || l1.trees() != l.trees()) return false;
  std::size_t root = 0;
  for (std::size_t h = 0; h < l1.trees(); ++h) {
    int sum = 0;
    for (int t = 0; t < l1[h]; ++t) sum += l0[root++];
    if (sum != l[h]) return false;
  }
  return true;
}

}  // namespace detail

// The decorations of l0 and l1 induced by a decoration of l = l0 # l1.
// Tree h of l is tree h of l1 with l^{0;h} grown on its leaves.
inline std::pair<Decoration, Decoration> split_decoration(const Decoration& L, const MultiIndex& l0,
                                                          const MultiIndex& l1) {
  if (!detail::glues_to(l0, l1, L.l)) throw ArityMismatch(L.l.str() + " is not " + l0.str() + " # " + l1.str());
  std::vector<Label> f0, f1;
  f0.reserve(Decoration::count_for(l0));
  f1.reserve(Decoration::count_for(l1));
  std::size_t root = 0, start = 0;  // first tree of l0 over the current tree of l1; its first label
  for (std::size_t h = 0; h < l1.trees(); ++h) {
    std::size_t off = start;
    f1.push_back(L.flat[off]);
    for (int t = 0; t < l1[h]; ++t) {
      int width = l0[root + static_cast<std::size_t>(t)];
      f0.insert(f0.end(), L.flat.begin() + static_cast<long>(off), L.flat.begin() + static_cast<long>(off) + width + 1);
      off += static_cast<std::size_t>(width);
      f1.push_back(L.flat[off]);
    }
    root += static_cast<std::size_t>(l1[h]);
    start += static_cast<std::size_t>(L.l[h]) + 1;
  }
  return {Decoration(l0, std::move(f0)), Decoration(l1, std::move(f1))};
}

// A decoration of (k,l): one decoration of l per leaf of k, in leaf order.
struct BiDecoration {
  MultiIndex k, l;
  std::vector<Decoration> leaves;

  BiDecoration(MultiIndex k_, MultiIndex l_, std::vector<Decoration> leaves_)
      : k(std::move(k_)), l(std::move(l_)), leaves(std::move(leaves_)) {
    if (static_cast<int>(leaves.size()) != k.size()) throw ArityMismatch("bidecoration needs |k| decorations");
    for (const auto& d : leaves)
      if (d.l != l) throw ArityMismatch("bidecoration leaves must decorate " + l.str());
  }

  // L^{i,i'}, both 1-based
  const Decoration& at(int i, int ip) const {
    return leaves[static_cast<std::size_t>(leaf_coord(k, i, ip) - 1)];
  }

  bool operator==(const BiDecoration&) const = default;
};

// Labelwise product of decorations of the same l.
inline Decoration multiply(const Monoid& M, const Decoration& a, const Decoration& b) {
  if (a.l != b.l) throw LabelMismatch("product of decorations of different multi-indices");
  Decoration c = a;
  for (std::size_t p = 0; p < c.flat.size(); ++p) c.flat[p] = M.mul(a.flat[p], b.flat[p]);
  return c;
}

// L^{i,x}: the product of the decorations on the leaves of each tree of k.
inline std::vector<Decoration> tree_products(const Monoid& M, const MultiIndex& k, const std::vector<Decoration>& leaves) {
  std::vector<Decoration> out;
  out.reserve(k.trees());
  std::size_t p = 0;
  for (int ki : k.entries()) {
    Decoration acc = leaves[p];
    for (int t = 1; t < ki; ++t) {
      const auto& next = leaves[p + static_cast<std::size_t>(t)].flat;
      for (std::size_t q = 0; q < acc.flat.size(); ++q) acc.flat[q] = M.mul(acc.flat[q], next[q]);
    }
    out.push_back(std::move(acc));
    p += static_cast<std::size_t>(ki);
  }
  return out;
}

inline std::vector<Decoration> tree_products(const Monoid& M, const BiDecoration& D) {
  return tree_products(M, D.k, D.leaves);
}

inline std::vector<LabelPair> hom_grid_in(const BiDecoration& D) {
  std::vector<LabelPair> out;
  for (const auto& d : D.leaves)
    for (const auto& pr : hom_grid_in(d)) out.push_back(pr);
  return out;
}

inline std::vector<LabelPair> hom_grid_out(const Monoid& M, const BiDecoration& D) {
  std::vector<LabelPair> out;
  for (const auto& d : tree_products(M, D))
    for (const auto& pr : hom_grid_out(d)) out.push_back(pr);
  return out;
}

struct BiSplit {
  BiDecoration lower;  // decorates (k0, l0)
  BiDecoration upper;  // decorates (k1, l1)
};

// The decorations induced by (k,l) = (k1,l1) # (k0,l0). The leaves of k are
// the leaves of k1; each tree of k1 is a leaf of k0 carrying the product of
// its leaves.
inline BiSplit split_bidecoration(const Monoid& M, const BiDecoration& D, const MultiIndex& k0, const MultiIndex& l0,
                                  const MultiIndex& k1, const MultiIndex& l1) {
  if (!detail::glues_to(k1, k0, D.k)) throw ArityMismatch(D.k.str() + " is not " + k1.str() + " # " + k0.str());
  std::vector<Decoration> up, low;
  up.reserve(D.leaves.size());
  low.reserve(k1.trees());
  for (const auto& d : D.leaves) up.push_back(split_decoration(d, l0, l1).second);
  for (const auto& d : tree_products(M, k1, D.leaves)) low.push_back(split_decoration(d, l0, l1).first);
  return {BiDecoration(k0, l0, std::move(low)), BiDecoration(k1, l1, std::move(up))};
}

namespace detail {

// Visits the In or Out pairs of a sequence of decorations in order.
template <class Fn>
void for_pairs(const std::vector<Decoration>& ds, bool out, Fn f) {
  for (const auto& d : ds) {
    std::size_t p = 0;
    for (int x : d.l.entries()) {
      if (out) {
        for (int q = 1; q <= x; ++q) f(d.flat[p + static_cast<std::size_t>(q) - 1], d.flat[p + static_cast<std::size_t>(q)]);
      } else {
        f(d.flat[p], d.flat[p + static_cast<std::size_t>(x)]);
      }
      p += static_cast<std::size_t>(x) + 1;
    }
  }
}

inline bool same_pairs(const std::vector<Decoration>& a, bool a_out, const std::vector<Decoration>& b, bool b_out) {
  std::vector<LabelPair> pa;
  for_pairs(a, a_out, [&](Label x, Label y) { pa.push_back({x, y}); });
  std::size_t i = 0;
  bool ok = true;
  for_pairs(b, b_out, [&](Label x, Label y) {
    if (i >= pa.size() || pa[i] != LabelPair{x, y}) ok = false;
    ++i;
  });
  return ok && i == pa.size();
}

}  // namespace detail

// Out(upper) = In(lower), In(D) = In(upper) and Out(lower) = Out(D).
inline bool composable(const Monoid& M, const BiDecoration& D, const BiSplit& s) {
  return detail::same_pairs(tree_products(M, s.upper), true, s.lower.leaves, false) &&
         detail::same_pairs(D.leaves, false, s.upper.leaves, false) &&
         detail::same_pairs(tree_products(M, s.lower), true, tree_products(M, D), true);
}

struct DecoratedTerm {
  RelationTerm term;
  BiDecoration outer;  // decorates the (k0,l0) factor
  BiDecoration inner;  // decorates the (k1,l1) factor
};

// Attaches the induced decorations to every term of R^k_l.
inline std::vector<DecoratedTerm> decorate_relation(const Monoid& M, const Relation& r, const BiDecoration& D) {
  if (r.lhs.k != D.k || r.lhs.l != D.l) throw LabelMismatch("decoration does not match the relation");
  std::vector<DecoratedTerm> out;
  for (const auto& t : r.terms) {
    auto s = split_bidecoration(M, D, t.outer.k, t.outer.l, t.inner.k, t.inner.l);
    out.push_back({t, std::move(s.lower), std::move(s.upper)});
  }
  return out;
}

// Sizes of the tensor grids of a bimodule operation mu^{(k^l|eps|k^r)}_L:
// A- and B-factors plus the module hom spaces of L.
struct BimoduleGrid {
  int in_left = 0, in_module = 0, in_right = 0;
  int out_left = 0, out_module = 0, out_right = 0;

  int in() const { return in_left + in_module + in_right; }
  int out() const { return out_left + out_module + out_right; }
};

inline BimoduleGrid bimodule_grid(const BimoduleIndex& b, const MultiIndex& l) {
  int nb = static_cast<int>(l.trees()), L = l.size();
  auto sum = [](const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
  };
  int al = static_cast<int>(b.left.size()) - b.eps, ar = static_cast<int>(b.right.size()) - b.eps;
  return {nb * sum(b.left), b.eps * nb, nb * sum(b.right), al * L, b.eps * L, ar * L};
}

// A decoration of a bimodule index: only the module carries objects.
struct BimoduleDecoration {
  BimoduleIndex b;
  std::optional<Decoration> module;  // present iff eps = 1

  BimoduleDecoration(BimoduleIndex b_, std::optional<Decoration> m) : b(std::move(b_)), module(std::move(m)) {
    if ((b.eps == 1) != module.has_value()) throw LabelMismatch("module decoration present iff eps = 1");
  }

  std::vector<LabelPair> module_in() const { return module ? hom_grid_in(*module) : std::vector<LabelPair>{}; }
  std::vector<LabelPair> module_out() const { return module ? hom_grid_out(*module) : std::vector<LabelPair>{}; }
};

}  // namespace biforest
