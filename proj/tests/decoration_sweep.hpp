#pragma once

// Exhaustive sweeps over decorations, shared by the unit tests and the
// acceptance run.

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>
#include <vector>

#include "biforest/decorations.hpp"

namespace sweep {

using namespace biforest;

// Calls f on every vector of n labels drawn from {0..q-1}, in parallel; the
// callback returns the number of failures it found.
template <class Fn>
long long over_assignments(int n, int q, Fn f, int jobs = static_cast<int>(std::thread::hardware_concurrency())) {
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  jobs = std::max(1, std::min<int>(jobs, 16));
  std::atomic<long long> next{0}, bad{0};
  const long long chunk = 4096;
  auto worker = [&] {
    std::vector<Label> v(static_cast<std::size_t>(n));
    for (long long start; (start = next.fetch_add(chunk)) < total;) {
      long long stop = std::min(total, start + chunk), local = 0;
      for (long long x = start; x < stop; ++x) {
        long long y = x;
        for (int i = 0; i < n; ++i) {
          v[static_cast<std::size_t>(i)] = static_cast<Label>(y % q);
          y /= q;
        }
        local += f(v);
      }
      bad += local;
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return bad;
}

inline int label_count(const MultiIndex& l) { return l.size() + static_cast<int>(l.trees()); }

inline long long decoration_failures(const MultiIndex& l, int q) {
  auto splits = splittings(l);
  return over_assignments(label_count(l), q, [&](const std::vector<Label>& v) {
    auto L = Decoration::from_flat(l, v);
    long long bad = 0;
    for (const auto& s : splits) {
      auto [d0, d1] = split_decoration(L, s.upper, s.lower);
      bad += !(hom_grid_out(d1) == hom_grid_in(d0) && hom_grid_in(d1) == hom_grid_in(L) &&
               hom_grid_out(d0) == hom_grid_out(L));
    }
    return bad;
  });
}

// l = l0 # l1 # l2 split in both associations.
inline long long threefold_failures(const MultiIndex& l, int q) {
  struct Triple {
    MultiIndex l0, l1, l2;
  };
  std::vector<Triple> triples;
  for (const auto& s : splittings(l))
    for (const auto& t : splittings(s.lower)) triples.push_back({s.upper, t.upper, t.lower});
  return over_assignments(label_count(l), q, [&](const std::vector<Label>& v) {
    auto L = Decoration::from_flat(l, v);
    long long bad = 0;
    for (const auto& [l0, l1, l2] : triples) {
      auto [a0, a12] = split_decoration(L, l0, glue(l1, l2));
      auto [a1, a2] = split_decoration(a12, l1, l2);
      auto [b01, b2] = split_decoration(L, glue(l0, l1), l2);
      auto [b0, b1] = split_decoration(b01, l0, l1);
      bad += !(a0 == b0 && a1 == b1 && a2 == b2);
    }
    return bad;
  });
}

inline BiDecoration bidecoration_from_flat(const MultiIndex& k, const MultiIndex& l, const std::vector<Label>& v) {
  std::vector<Decoration> leaves;
  std::size_t w = static_cast<std::size_t>(label_count(l));
  for (int p = 0; p < k.size(); ++p) {
    std::vector<Label> part(v.begin() + static_cast<long>(w * static_cast<std::size_t>(p)),
                            v.begin() + static_cast<long>(w * static_cast<std::size_t>(p + 1)));
    leaves.push_back(Decoration::from_flat(l, part));
  }
  return BiDecoration(k, l, std::move(leaves));
}

// Every decoration of (k,l) by q labels, every splitting: the interfaces match.
inline long long bidecoration_failures(const Monoid& M, const MultiIndex& k, const MultiIndex& l, int q) {
  struct Split {
    MultiIndex k0, l0, k1, l1;
  };
  std::vector<Split> splits;
  for (const auto& sk : splittings(k))
    for (const auto& sl : splittings(l)) splits.push_back({sk.lower, sl.upper, sk.upper, sl.lower});
  std::size_t w = static_cast<std::size_t>(label_count(l));
  return over_assignments(k.size() * label_count(l), q, [&](const std::vector<Label>& v) {
    thread_local std::optional<BiDecoration> D;
    if (!D || D->k != k || D->l != l) D = bidecoration_from_flat(k, l, v);
    for (std::size_t p = 0; p < D->leaves.size(); ++p)
      std::copy(v.begin() + static_cast<long>(w * p), v.begin() + static_cast<long>(w * (p + 1)), D->leaves[p].flat.begin());
    long long bad = 0;
    for (const auto& s : splits) bad += !composable(M, *D, split_bidecoration(M, *D, s.k0, s.l0, s.k1, s.l1));
    return bad;
  });
}

// Three-layer splittings of (k,l) in both associations, on one decoration by
// distinct letters of a free monoid.
inline long long bi_threefold_failures(const FreeMonoid& M, const MultiIndex& k, const MultiIndex& l) {
  std::vector<Label> v;
  for (int p = 0; p < k.size() * label_count(l); ++p)
    v.push_back(M.word(std::string(1, static_cast<char>('a' + p % 26)) + (p >= 26 ? std::to_string(p / 26) : "")));
  auto D = bidecoration_from_flat(k, l, v);
  long long bad = 0;
  for (const auto& sk : splittings(k))
    for (const auto& tk : splittings(sk.upper))
      for (const auto& sl : splittings(l))
        for (const auto& tl : splittings(sl.lower)) {
          const MultiIndex &k0 = sk.lower, &k1 = tk.lower, &k2 = tk.upper;
          const MultiIndex &l0 = sl.upper, &l1 = tl.upper, &l2 = tl.lower;
          auto a = split_bidecoration(M, D, k0, l0, sk.upper, sl.lower);
          auto a2 = split_bidecoration(M, a.upper, k1, l1, k2, l2);
          auto b = split_bidecoration(M, D, glue(k1, k0), glue(l0, l1), k2, l2);
          auto b2 = split_bidecoration(M, b.lower, k0, l0, k1, l1);
          bad += !(a.lower == b2.lower && a2.lower == b2.upper && a2.upper == b.upper);
        }
  return bad;
}

}  // namespace sweep
