#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "signs.hpp"

namespace biforest {

// A finite-dimensional graded vector space with a homogeneous basis.
struct GradedSpace {
  std::vector<std::string> names;
  std::vector<int> degrees;

  int dim() const { return static_cast<int>(degrees.size()); }
  int max_degree() const { return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end()); }
  int min_degree() const { return degrees.empty() ? 0 : *std::min_element(degrees.begin(), degrees.end()); }
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// Largest tensor power basis we agree to build; BIFOREST_MAX_TENSOR overrides.
inline std::size_t max_tensor_entries() {
  if (const char* s = std::getenv("BIFOREST_MAX_TENSOR")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 20;
}

inline std::size_t power_dim(int d, int n) {
  std::size_t limit = max_tensor_entries(), r = 1;
  for (int i = 0; i < n; ++i) {
    if (d != 0 && r > limit / static_cast<std::size_t>(d))
      throw TensorTooLarge("refusing " + std::to_string(d) + "^" + std::to_string(n) +
                           " basis elements (limit " + std::to_string(limit) + ")");
    r *= static_cast<std::size_t>(d);
  }
  if (r > limit)
    throw TensorTooLarge("refusing " + std::to_string(r) + " basis elements (limit " + std::to_string(limit) + ")");
  return r;
}

// The n-th tensor power of a graded space; basis tuples are indexed in
// lexicographic order with the first factor most significant.
class TensorSpace {
 public:
  TensorSpace() = default;
  TensorSpace(SpacePtr s, int n) : space_(std::move(s)), n_(n) {
    std::size_t d = power_dim(space_->dim(), n);
    auto deg = std::make_shared<std::vector<int>>(d, 0);
    for (std::size_t idx = 0; idx < d; ++idx) {
      std::size_t x = idx;
      int sum = 0;
      for (int i = 0; i < n; ++i) {
        sum += space_->degrees[x % static_cast<std::size_t>(space_->dim())];
        x /= static_cast<std::size_t>(space_->dim());
      }
      (*deg)[idx] = sum;
    }
    degrees_ = std::move(deg);
  }

  const SpacePtr& space() const { return space_; }
  int factors() const { return n_; }
  std::size_t dim() const { return degrees_->size(); }
  int degree(std::size_t idx) const { return (*degrees_)[idx]; }

  std::vector<int> digits(std::size_t idx) const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int i = n_ - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(space_->dim()));
      idx /= static_cast<std::size_t>(space_->dim());
    }
    return d;
  }

  std::size_t index(const std::vector<int>& digits) const {
    std::size_t idx = 0;
    for (int x : digits) idx = idx * static_cast<std::size_t>(space_->dim()) + static_cast<std::size_t>(x);
    return idx;
  }

  bool operator==(const TensorSpace& o) const { return space_ == o.space_ && n_ == o.n_; }

  std::string describe(std::size_t idx) const {
    std::string s;
    for (int x : digits(idx)) s += (s.empty() ? "" : "⊗") + space_->names[static_cast<std::size_t>(x)];
    return s.empty() ? "1" : s;
  }

 private:
  SpacePtr space_;
  int n_ = 0;
  std::shared_ptr<const std::vector<int>> degrees_;
};

struct Entry {
  std::size_t row, col;
  std::string value;
};

// A homogeneous linear map between tensor powers, stored by columns.
template <class F>
class GradedMap {
 public:
  using Column = std::vector<std::pair<std::size_t, F>>;

  GradedMap() = default;
  GradedMap(TensorSpace src, TensorSpace dst, int degree)
      : src_(std::move(src)), dst_(std::move(dst)), degree_(degree), cols_(src_.dim()) {}

  static GradedMap identity(const TensorSpace& s) {
    GradedMap g(s, s, 0);
    for (std::size_t i = 0; i < s.dim(); ++i) g.cols_[i].push_back({i, F::one()});
    return g;
  }

  const TensorSpace& src() const { return src_; }
  const TensorSpace& dst() const { return dst_; }
  int degree() const { return degree_; }
  const Column& column(std::size_t c) const { return cols_[c]; }

  // Adds v at (row, col); rejects entries of the wrong degree.
  void add(std::size_t row, std::size_t col, const F& v) {
    if (v.is_zero()) return;
    if (dst_.degree(row) != src_.degree(col) + degree_)
      throw ShapeMismatch("entry " + dst_.describe(row) + " <- " + src_.describe(col) + " breaks degree " +
                          std::to_string(degree_));
    auto& c = cols_[col];
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& p, std::size_t r) { return p.first < r; });
    if (it != c.end() && it->first == row) {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    } else {
      c.insert(it, {row, v});
    }
  }

  F at(std::size_t row, std::size_t col) const {
    for (const auto& [r, v] : cols_[col])
      if (r == row) return v;
    return F::zero();
  }

  bool is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const Column& c) { return c.empty(); });
  }

  std::optional<Entry> first_nonzero() const {
    for (std::size_t c = 0; c < cols_.size(); ++c)
      if (!cols_[c].empty()) return Entry{cols_[c].front().first, c, cols_[c].front().second.str()};
    return std::nullopt;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

  GradedMap negated() const {
    GradedMap g = *this;
    for (auto& c : g.cols_)
      for (auto& p : c) p.second = -p.second;
    return g;
  }

  GradedMap signed_by(SignBit s) const { return s.value() ? negated() : *this; }

  // this += s * o
  void accumulate(const GradedMap& o, SignBit s = SignBit(0)) {
    check_same(o);
    for (std::size_t c = 0; c < cols_.size(); ++c)
      for (const auto& [r, v] : o.cols_[c]) add(r, c, s.value() ? -v : v);
  }

  bool operator==(const GradedMap& o) const {
    if (!(src_ == o.src_) || !(dst_ == o.dst_)) return false;
    if (is_zero() && o.is_zero()) return true;
    return degree_ == o.degree_ && cols_ == o.cols_;
  }

  void check_same(const GradedMap& o) const {
    if (!(src_ == o.src_) || !(dst_ == o.dst_)) throw ShapeMismatch("maps between different spaces");
    if (degree_ != o.degree_ && !o.is_zero() && !is_zero()) throw ShapeMismatch("maps of different degrees");
  }

 private:
  TensorSpace src_, dst_;
  int degree_ = 0;
  std::vector<Column> cols_;
};

// g o f
template <class F>
GradedMap<F> compose(const GradedMap<F>& g, const GradedMap<F>& f) {
  if (!(g.src() == f.dst())) throw ShapeMismatch("composition of incompatible maps");
  GradedMap<F> h(f.src(), g.dst(), f.degree() + g.degree());
  for (std::size_t c = 0; c < f.src().dim(); ++c)
    for (const auto& [mid, v] : f.column(c))
      for (const auto& [r, w] : g.column(mid)) h.add(r, c, w * v);
  return h;
}

// (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y)
template <class F>
GradedMap<F> tensor(const GradedMap<F>& f, const GradedMap<F>& g) {
  if (f.src().space() != g.src().space() || f.dst().space() != g.dst().space())
    throw ShapeMismatch("tensor of maps over different spaces");
  TensorSpace src(f.src().space(), f.src().factors() + g.src().factors());
  TensorSpace dst(f.dst().space(), f.dst().factors() + g.dst().factors());
  GradedMap<F> h(src, dst, f.degree() + g.degree());
  std::size_t gs = g.src().dim(), gd = g.dst().dim();
  bool odd = g.degree() % 2 != 0;
  for (std::size_t x = 0; x < f.src().dim(); ++x) {
    bool flip = odd && (f.src().degree(x) % 2 != 0);
    for (std::size_t y = 0; y < gs; ++y)
      for (const auto& [rx, vx] : f.column(x))
        for (const auto& [ry, vy] : g.column(y)) {
          F v = vx * vy;
          h.add(rx * gd + ry, x * gs + y, flip ? -v : v);
        }
  }
  return h;
}

// x_0 (x) ... (x) x_{n-1} -> (Koszul sign) x_{order[0]} (x) ... (x) x_{order[n-1]}
template <class F>
GradedMap<F> permutation_map(const TensorSpace& s, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != s.factors()) throw ShapeMismatch("permutation of the wrong length");
  (void)permutation_signature(order);
  GradedMap<F> p(s, s, 0);
  const auto& degs = s.space()->degrees;
  std::vector<int> fdeg(order.size()), out(order.size());
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    auto d = s.digits(idx);
    for (std::size_t i = 0; i < d.size(); ++i) fdeg[i] = degs[static_cast<std::size_t>(d[i])];
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[static_cast<std::size_t>(order[i])];
    SignBit sg = koszul_sign(order, fdeg);
    p.add(s.index(out), idx, sg.value() ? -F::one() : F::one());
  }
  return p;
}

inline std::vector<int> inverse_order(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) inv[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  return inv;
}

// The grid transpose (A^b)^a -> (A^a)^b.
template <class F>
GradedMap<F> tau_map(const SpacePtr& s, int a, int b) {
  std::vector<int> order;
  for (int j = 0; j < b; ++j)
    for (int i = 0; i < a; ++i) order.push_back(i * b + j);
  return permutation_map<F>(TensorSpace(s, a * b), order);
}

// sum_i id^{i-1} (x) d (x) id^{n-i} on the n-th tensor power.
template <class F>
GradedMap<F> tensor_differential(const GradedMap<F>& d, int n) {
  if (d.src().factors() != 1 || d.dst().factors() != 1) throw ShapeMismatch("differential must act on A");
  TensorSpace s(d.src().space(), n);
  GradedMap<F> out(s, s, d.degree());
  const auto& degs = s.space()->degrees;
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    auto dig = s.digits(idx);
    int before = 0;
    for (int i = 0; i < n; ++i) {
      int x = dig[static_cast<std::size_t>(i)];
      for (const auto& [r, v] : d.column(static_cast<std::size_t>(x))) {
        auto nd = dig;
        nd[static_cast<std::size_t>(i)] = static_cast<int>(r);
        bool flip = (d.degree() % 2 != 0) && (before % 2 != 0);
        out.add(s.index(nd), idx, flip ? -v : v);
      }
      before += degs[static_cast<std::size_t>(x)];
    }
  }
  return out;
}

// Builds a map from a dense matrix (rows: target basis, columns: source basis).
template <class F>
GradedMap<F> from_dense(const TensorSpace& src, const TensorSpace& dst, int degree,
                        const std::vector<std::vector<F>>& rows) {
  if (rows.size() != dst.dim()) throw ShapeMismatch("matrix has " + std::to_string(rows.size()) + " rows, expected " +
                                                    std::to_string(dst.dim()));
  GradedMap<F> g(src, dst, degree);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != src.dim())
      throw ShapeMismatch("matrix row has " + std::to_string(rows[r].size()) + " entries, expected " +
                          std::to_string(src.dim()));
    for (std::size_t c = 0; c < rows[r].size(); ++c) g.add(r, c, rows[r][c]);
  }
  return g;
}

template <class F>
std::vector<std::vector<F>> to_dense(const GradedMap<F>& g) {
  std::vector<std::vector<F>> m(g.dst().dim(), std::vector<F>(g.src().dim(), F::zero()));
  for (std::size_t c = 0; c < g.src().dim(); ++c)
    for (const auto& [r, v] : g.column(c)) m[r][c] = v;
  return m;
}

}  // namespace biforest
