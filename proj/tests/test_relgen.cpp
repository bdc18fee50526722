#include <gtest/gtest.h>

#include <map>
#include <set>

#include "biforest/moduli.hpp"
#include "biforest/relgen.hpp"
#include "biforest/simplify.hpp"
#include "oracles.hpp"

using namespace biforest;

namespace {

MultiIndex mi(std::initializer_list<int> v) { return MultiIndex(std::vector<int>(v)); }

MultiIndex ones(int n) { return MultiIndex::vertical(n); }

using oracle::TermKey;

std::map<TermKey, int> as_map(const Relation& r) {
  std::map<TermKey, int> m;
  for (const auto& t : r.terms) {
    bool fresh = m.emplace(TermKey{t.outer, t.inner}, t.sign.value()).second;
    EXPECT_TRUE(fresh) << "repeated term " << render(t.outer) << "∘" << render(t.inner);
  }
  return m;
}

}  // namespace

TEST(Relations, HopfTerms) {
  auto r = relation_R(mi({2}), mi({2}));
  std::vector<const RelationTerm*> rest;
  for (const auto& t : r.terms)
    if (!t.outer.is_differential() && !t.inner.is_differential()) rest.push_back(&t);
  ASSERT_EQ(rest.size(), 2u);
  EXPECT_EQ(rest[0]->outer, OpLabel::alpha(mi({1}), mi({2})));
  EXPECT_EQ(rest[0]->inner, OpLabel::alpha(mi({2}), mi({1})));
  EXPECT_EQ(rest[0]->sign.value(), 1);
  EXPECT_EQ(rest[1]->outer, OpLabel::alpha(mi({2}), mi({1, 1})));
  EXPECT_EQ(rest[1]->inner, OpLabel::alpha(mi({1, 1}), mi({2})));
  EXPECT_EQ(rest[1]->sign.value(), 0);
  EXPECT_EQ(r.terms.size(), 4u);
}

TEST(Relations, HopfRendering) {
  EXPECT_EQ(render(*expand_simplifications(OpLabel::alpha(mi({1, 1}), mi({2})))), "α¹₂⊗α¹₂");
  EXPECT_EQ(render(*expand_simplifications(OpLabel::alpha(mi({2}), mi({1, 1})))), "(α²₁⊗α²₁)∘τ²₂");
  EXPECT_EQ(render_relation(relation_R(mi({2}), mi({2}))), "∂α²₂ = −α¹₂∘α²₁ + (α²₁⊗α²₁)∘τ²₂∘(α¹₂⊗α¹₂)");
}

TEST(Relations, SimplificationExamples) {
  EXPECT_EQ(expand_simplifications(OpLabel::alpha(mi({1, 1}), mi({2, 3})))->kind, Expr::Kind::Zero);
  EXPECT_THROW(expand_simplifications(OpLabel::alpha(mi({2}), mi({2}))), NotSimplifiable);
  EXPECT_THROW(expand_simplifications(OpLabel::alpha(mi({1}), mi({1}))), NotSimplifiable);
  EXPECT_EQ(expand_simplifications(OpLabel::alpha(mi({1, 1}), mi({1})))->kind, Expr::Kind::Differential);
  EXPECT_EQ(render(*expand_simplifications(OpLabel::alpha(mi({1, 2}), mi({1})))), "id⊗α²₁");
}

TEST(Relations, DifferentialSquared) {
  auto r = relation_R(mi({1}), mi({1}));
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_TRUE(r.terms[0].outer.is_differential());
  EXPECT_TRUE(r.terms[0].inner.is_differential());
}

TEST(Relations, AinfAlgebra) {
  for (int k = 1; k <= 6; ++k) {
    auto want = oracle::ainf_algebra(k);
    ASSERT_TRUE(want.consistent);
    EXPECT_EQ(as_map(relation_R(mi({k}), mi({1}))), want.terms) << "k = " << k;
  }
}

TEST(Relations, AinfCoalgebra) {
  for (int l = 1; l <= 6; ++l) {
    auto want = oracle::ainf_coalgebra(l);
    ASSERT_TRUE(want.consistent);
    EXPECT_EQ(as_map(relation_R(mi({1}), mi({l}))), want.terms) << "l = " << l;
  }
}

TEST(Relations, AinfAlgebraMorphism) {
  for (int k = 1; k <= 6; ++k) {
    auto want = oracle::ainf_algebra_morphism(k);
    ASSERT_TRUE(want.consistent);
    EXPECT_EQ(as_map(relation_M(mi({k}), mi({1}))), want.terms) << "k = " << k;
  }
}

TEST(Relations, AinfCoalgebraMorphism) {
  for (int l = 1; l <= 6; ++l) {
    auto want = oracle::ainf_coalgebra_morphism(l);
    ASSERT_TRUE(want.consistent);
    EXPECT_EQ(as_map(relation_M(mi({1}), mi({l}))), want.terms) << "l = " << l;
  }
}

TEST(Relations, ChainMap) {
  auto r = relation_M(mi({1}), mi({1}));
  ASSERT_EQ(r.terms.size(), 2u);
  EXPECT_NE(r.terms[0].sign, r.terms[1].sign);
}

TEST(Relations, TermsAreFacesPlusDifferentials) {
  for (const auto& [k, l] : index_pairs(7)) {
    if (symmetry_dim(k, l) != 1) continue;
    auto r = relation_R(k, l);
    auto faces = boundary_faces(k, l);
    std::size_t d = 0;
    for (const auto& t : r.terms) d += t.outer.is_differential() || t.inner.is_differential();
    EXPECT_EQ(r.terms.size(), faces.size() + d) << k.str() << l.str();
    // the face terms carry the face orientations
    std::size_t fi = 0;
    for (const auto& t : r.terms) {
      if (t.outer.is_differential() || t.inner.is_differential()) continue;
      ASSERT_LT(fi, faces.size());
      EXPECT_EQ(t.outer.k, faces[fi].k0);
      EXPECT_EQ(t.inner.l, faces[fi].l1);
      EXPECT_EQ(t.sign, faces[fi].sign);
      ++fi;
    }
  }
}

TEST(Relations, ShapesCompose) {
  for (const auto& [k, l] : index_pairs(8)) {
    for (const auto& t : relation_R(k, l).terms) {
      EXPECT_EQ(t.inner.l.size(), static_cast<int>(t.outer.l.trees()));
      EXPECT_EQ(static_cast<int>(t.inner.k.trees()), t.outer.k.size());
    }
    for (const auto& t : relation_M(k, l).terms) {
      EXPECT_EQ(t.inner.cols_out(), t.outer.cols_in());
      EXPECT_EQ(t.inner.rows_out(), t.outer.rows_in());
    }
  }
}

TEST(Relations, CanonicalOrderAndDistinct) {
  for (const auto& [k, l] : index_pairs(7)) {
    auto r = relation_R(k, l);
    for (std::size_t i = 1; i < r.terms.size(); ++i) {
      const auto &a = r.terms[i - 1], &b = r.terms[i];
      EXPECT_LT(std::tie(a.outer.k, a.outer.l, a.inner.k, a.inner.l), std::tie(b.outer.k, b.outer.l, b.inner.k, b.inner.l));
    }
  }
}

TEST(Bimodule, ModuleDifferential) {
  auto r = relation_bimodule(BimoduleIndex({0}, 1, {0}), mi({1}));
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(r.terms[0].outer.kind, OpKind::Mu);
  EXPECT_EQ(render(r.terms[0].outer), "μ^{(0|1|0)}₁");
}

TEST(Bimodule, LeftActionLeibniz) {
  // d mu = mu o (d (x) id + id (x) d): two terms, the second a tensor differential
  auto r = relation_bimodule(BimoduleIndex({1}, 1, {0}), mi({1}));
  ASSERT_EQ(r.terms.size(), 2u);
  int diff = 0;
  for (const auto& t : r.terms) {
    EXPECT_EQ(t.outer.kind, OpKind::Mu);
    EXPECT_EQ(t.inner.kind, OpKind::Mu);
    diff += (t.outer.bimodule->total() == mi({1})) + (t.inner.bimodule->total() == mi({1, 1}));
  }
  EXPECT_EQ(diff, 2);
  auto d = std::find_if(r.terms.begin(), r.terms.end(), [](const auto& t) { return t.inner.k == mi({1, 1}); });
  ASSERT_NE(d, r.terms.end());
  EXPECT_EQ(render(d->inner), "μ^{(1,0|1|0)}₁");
}

TEST(Bimodule, EmptySideIsAlgebraRelation) {
  for (int s = 1; s <= 4; ++s)
    for (const auto& k : compositions(s))
      for (int ls = 1; ls + s <= 6; ++ls)
        for (const auto& l : compositions(ls)) {
          auto rb = relation_bimodule(BimoduleIndex({}, 0, std::vector<int>(k.entries().begin(), k.entries().end())), l);
          auto rr = relation_R(k, l, OpKind::Beta);
          ASSERT_EQ(rb.terms.size(), rr.terms.size());
          for (std::size_t i = 0; i < rb.terms.size(); ++i) {
            EXPECT_EQ(rb.terms[i].outer, rr.terms[i].outer);
            EXPECT_EQ(rb.terms[i].inner, rr.terms[i].inner);
            EXPECT_EQ(rb.terms[i].sign, rr.terms[i].sign);
          }
          auto la = relation_bimodule(BimoduleIndex(std::vector<int>(k.entries().begin(), k.entries().end()), 0, {}), l);
          EXPECT_EQ(as_map(la), as_map(relation_R(k, l)));
        }
}

TEST(Degree, PruneMatchesBruteForce) {
  // brute force: lowest input degree and highest output degree over all
  // basis tensors, factor by factor
  auto extreme = [](int factors, int maxdeg, bool high) {
    int best = 0;
    for (int f = 0; f < factors; ++f) {
      int pick = high ? 0 : maxdeg;
      for (int d = 0; d <= maxdeg; ++d) pick = high ? std::max(pick, d) : std::min(pick, d);
      best += pick;
    }
    return best;
  };
  for (int maxdeg = 0; maxdeg <= 3; ++maxdeg)
    for (const auto& [k, l] : index_pairs(8)) {
      OpLabel op = OpLabel::alpha(k, l);
      int lo = extreme(op.rows_in() * op.cols_in(), maxdeg, false);
      int hi = extreme(op.rows_out() * op.cols_out(), maxdeg, true);
      bool brute = op.degree() + lo > hi;
      EXPECT_EQ(vanishes_by_degree(op, maxdeg), brute) << k.str() << l.str() << " " << maxdeg;
      long long a = static_cast<long long>(k.trees()), b = static_cast<long long>(l.trees());
      bool closed_form = k.size() > (a * maxdeg - 1) * l.size() + a + b + 1;
      EXPECT_EQ(vanishes_by_degree(op, maxdeg), closed_form);
    }
}

TEST(Degree, Examples) {
  EXPECT_TRUE(vanishes_by_degree(OpLabel::alpha(mi({5}), mi({1})), 1));
  EXPECT_FALSE(vanishes_by_degree(OpLabel::alpha(mi({3}), mi({1})), 1));
  for (const auto& [k, l] : index_pairs(6)) {
    if (k.vertices() + l.vertices() >= 2) {
      EXPECT_TRUE(vanishes_by_degree(OpLabel::alpha(k, l), 0));
    }
    EXPECT_FALSE(vanishes_by_degree(OpLabel::alpha(k, l), 10));
  }
  auto r = prune_by_degree(relation_R(mi({3}), mi({2})), 0);
  for (const auto& t : r.terms) {
    EXPECT_LE(t.outer.degree(), 0);
    EXPECT_LE(t.inner.degree(), 0);
  }
}

TEST(Render, Labels) {
  EXPECT_EQ(render(OpLabel::alpha(mi({2}), mi({1}))), "α²₁");
  EXPECT_EQ(render(OpLabel::alpha(mi({1, 2}), mi({3}))), "α^{(1,2)}₃");
  EXPECT_EQ(render(OpLabel::f(mi({12}), mi({1}))), "f^{12}₁");
  EXPECT_EQ(OpLabel::alpha(mi({2, 1}), mi({2})).degree(), 1);
  EXPECT_EQ(OpLabel::f(mi({2, 1}), mi({2})).degree(), 2);
  EXPECT_EQ(ones(3), mi({1, 1, 1}));
}
