#include <gtest/gtest.h>

#include <random>

#include "algebras.hpp"
#include "biforest/dgbialgebra.hpp"

using namespace biforest;

namespace {

MultiIndex mi(std::initializer_list<int> v) { return MultiIndex(std::vector<int>(v)); }

template <class F>
std::string failures(const VerifyReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.zero) s += render(c.op) + " " + c.detail + "\n";
  return s;
}

}  // namespace

TEST(Graded, TensorDifferentialSquaresToZero) {
  auto alg = testalg::dual_numbers();
  auto d2 = tensor_differential(alg.d, 2);
  EXPECT_TRUE(compose(d2, d2).is_zero());
  auto q = testalg::exterior2();
  EXPECT_TRUE(compose(tensor_differential(q.d, 3), tensor_differential(q.d, 3)).is_zero());
}

TEST(Graded, KoszulTensorSign) {
  // (phi (x) psi)(x (x) y) with |x| = |psi| = 1 picks up a sign
  auto alg = testalg::exterior();
  TensorSpace a1(alg.space, 1);
  GradedMap<Q> psi(a1, a1, 1);
  psi.add(1, 0, Q(1L));  // 1 -> x
  auto id = GradedMap<Q>::identity(a1);
  auto t = tensor(id, psi);
  EXPECT_EQ(t.at(3, 2), Q(-1L));  // x(x)1 -> -x(x)x
  EXPECT_EQ(t.at(1, 0), Q(1L));
}

TEST(Graded, TauIsAnInvolutionUpToTranspose) {
  auto alg = testalg::exterior();
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      if (a * b > 9) continue;
      auto t = compose(tau_map<Q>(alg.space, b, a), tau_map<Q>(alg.space, a, b));
      EXPECT_EQ(t, GradedMap<Q>::identity(TensorSpace(alg.space, a * b))) << a << "," << b;
    }
  EXPECT_EQ(tau_map<Q>(alg.space, 1, 3), GradedMap<Q>::identity(TensorSpace(alg.space, 3)));
}

TEST(Graded, TauMatchesTauSign) {
  auto alg = testalg::exterior();
  TensorSpace s(alg.space, 4);
  auto t = tau_map<Q>(alg.space, 2, 2);
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    auto dig = s.digits(idx);
    std::vector<int> deg(dig.begin(), dig.end());
    int sg = tau_sign(deg, 2, 2).sign();
    std::vector<int> out{dig[0], dig[2], dig[1], dig[3]};
    EXPECT_EQ(t.at(s.index(out), idx), Q(static_cast<long>(sg)));
  }
}

TEST(Graded, DegreesAreEnforced) {
  auto alg = testalg::exterior();
  TensorSpace a1(alg.space, 1);
  GradedMap<Q> g(a1, a1, 0);
  EXPECT_THROW(g.add(1, 0, Q(1L)), ShapeMismatch);
}

TEST(Graded, Guardrail) {
  auto alg = testalg::exterior2();
  EXPECT_THROW(TensorSpace(alg.space, 11), TensorTooLarge);
}

TEST(DgBialgebra, SampleAlgebrasAreBialgebras) {
  EXPECT_TRUE(testalg::exterior().diagnostics().empty());
  EXPECT_TRUE(testalg::exterior2().diagnostics().empty());
  EXPECT_TRUE(testalg::dual_numbers().diagnostics().empty());
  EXPECT_TRUE(testalg::group_z2().diagnostics().empty());
  EXPECT_TRUE(testalg::pointed_coalgebra().diagnostics().empty());
  auto bad = testalg::corrupted_exterior().diagnostics();
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], "delta is coassociative");
}

TEST(DgBialgebra, HopfRelationAsMatrices) {
  auto alg = testalg::exterior();
  auto t = dg_to_f(alg, 4);
  auto lhs = compose(t.get(OpLabel::alpha(mi({1}), mi({2}))), t.get(OpLabel::alpha(mi({2}), mi({1}))));
  auto rhs = compose(t.get(OpLabel::alpha(mi({2}), mi({1, 1}))), t.get(OpLabel::alpha(mi({1, 1}), mi({2}))));
  EXPECT_EQ(rhs.src().dim(), 4u);
  EXPECT_EQ(t.get(OpLabel::alpha(mi({1, 1}), mi({2}))).dst().dim(), 16u);
  EXPECT_EQ(lhs, rhs);
  EXPECT_FALSE(lhs.is_zero());
}

TEST(DgBialgebra, ExteriorPassesToSix) {
  auto t = dg_to_f(testalg::exterior(), 6);
  auto rep = verify_relations(t, 6);
  EXPECT_TRUE(rep.ok()) << failures<Q>(rep);
  EXPECT_EQ(rep.checks.size(), index_pairs(6).size());
}

TEST(DgBialgebra, GroupAlgebraPassesToSix) {
  auto t = dg_to_f(testalg::group_z2(), 6);
  auto rep = verify_relations(t, 6, 4);
  EXPECT_TRUE(rep.ok()) << failures<F2>(rep);
}

TEST(DgBialgebra, DifferentialCasePasses) {
  auto t = dg_to_f(testalg::dual_numbers(), 5);
  auto rep = verify_relations(t, 5, 2);
  EXPECT_TRUE(rep.ok()) << failures<F2>(rep);
}

TEST(DgBialgebra, SignedDifferentialCasePasses) {
  auto alg = testalg::pointed_coalgebra();
  EXPECT_TRUE(alg.diagnostics().empty());
  auto t = dg_to_f(alg, 6);
  auto rep = verify_relations(t, 6, 4);
  EXPECT_TRUE(rep.ok()) << failures<Q>(rep);
  auto rep2 = verify_morphism(t, t, identity_morphism(t), 5, 4);
  EXPECT_TRUE(rep2.ok()) << failures<Q>(rep2);
}

TEST(DgBialgebra, TwoGeneratorsPassToFive) {
  auto t = dg_to_f(testalg::exterior2(), 5);
  auto rep = verify_relations(t, 5, 4);
  EXPECT_TRUE(rep.ok()) << failures<Q>(rep);
}

TEST(DgBialgebra, CorruptedCoproductFails) {
  auto t = dg_to_f(testalg::corrupted_exterior(), 6);
  auto rep = verify_relations(t, 6);
  ASSERT_FALSE(rep.ok());
  const auto* f = rep.first_failure();
  ASSERT_NE(f, nullptr);
  EXPECT_TRUE(f->offending.has_value());
  bool coassoc = false;
  for (const auto& c : rep.checks)
    if (!c.zero && c.op.k == mi({1}) && c.op.l == mi({3})) coassoc = true;
  EXPECT_TRUE(coassoc);
}

TEST(DgBialgebra, ParallelMatchesSerial) {
  auto t = dg_to_f(testalg::exterior(), 5);
  auto a = verify_relations(t, 5, 1), b = verify_relations(t, 5, 3);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].op, b.checks[i].op);
    EXPECT_EQ(a.checks[i].zero, b.checks[i].zero);
  }
}

TEST(DgBialgebra, SimplificationAxiomsHold) {
  auto t = dg_to_f(testalg::exterior(), 6);
  auto rep = check_simplifications(t);
  EXPECT_TRUE(rep.ok()) << failures<Q>(rep);
  EXPECT_GT(rep.checks.size(), 20u);
}

TEST(DgBialgebra, MissingOperation) {
  auto t = dg_to_f(testalg::exterior(), 3);
  EXPECT_THROW(t.get(OpLabel::alpha(mi({2, 1}), mi({1, 1}))), MissingOperation);
  EXPECT_THROW(verify_relations(t, 4), MissingOperation);
  EXPECT_TRUE(t.get(OpLabel::alpha(mi({2}), mi({2}))).is_zero());
}

TEST(DgBialgebra, RuleOrderDoesNotMatter) {
  // generic atoms: random matrices for the irreducible operations
  auto alg = testalg::exterior2();
  std::mt19937 rng(7);
  std::map<OpLabel, GradedMap<Q>> atoms;
  auto atom = [&](const OpLabel& op) -> GradedMap<Q> {
    auto it = atoms.find(op);
    if (it != atoms.end()) return it->second;
    auto g = zero_operation<Q>(op, alg.space, alg.space);
    for (std::size_t c = 0; c < g.src().dim(); ++c)
      for (std::size_t r = 0; r < g.dst().dim(); ++r)
        if (g.dst().degree(r) == g.src().degree(c) + g.degree()) g.add(r, c, Q(static_cast<long>(rng() % 7) - 3));
    atoms.emplace(op, g);
    return g;
  };
  Evaluator<Q> ev{alg.space, alg.space, &alg.d, atom};
  for (const auto& [k, l] : index_pairs(5)) {
    OpLabel op = OpLabel::alpha(k, l);
    auto first = ev(*normal_form(op));
    for (unsigned seed = 1; seed <= 3; ++seed) {
      std::mt19937 pick(seed);
      RuleChooser choose = [&](const OpLabel&, const std::vector<RuleChoice>& rs) { return rs[pick() % rs.size()]; };
      EXPECT_EQ(ev(*normal_form(op, choose)), first) << render(op) << " seed " << seed;
    }
  }
}

TEST(Morphism, IdentityPassesToFive) {
  auto t = dg_to_f(testalg::exterior(), 5);
  auto id = identity_morphism(t);
  auto rep = verify_morphism(t, t, id, 5);
  EXPECT_TRUE(rep.ok()) << failures<Q>(rep);
  EXPECT_TRUE(id.get(OpLabel::f(mi({2}), mi({1}))).is_zero());
  EXPECT_EQ(id.get(OpLabel::f(mi({1, 1}), mi({1}))), GradedMap<Q>::identity(TensorSpace(t.space, 2)));
}

TEST(Morphism, ZeroMorphismBalances) {
  auto t = dg_to_f(testalg::exterior(), 5);
  auto rep = verify_morphism(t, t, zero_morphism(t, t), 5);
  EXPECT_TRUE(rep.ok());
}

TEST(Morphism, IdentityOnDifferentialAlgebra) {
  auto t = dg_to_f(testalg::dual_numbers(), 5);
  auto rep = verify_morphism(t, t, identity_morphism(t), 5, 2);
  EXPECT_TRUE(rep.ok()) << failures<F2>(rep);
}

TEST(Morphism, ScaledIdentityIsNotAMorphism) {
  auto t = dg_to_f(testalg::exterior(), 4);
  MorphismTable<Q> f{t.space, t.space, {}};
  auto g = GradedMap<Q>::identity(TensorSpace(t.space, 1));
  f.components.emplace(OpLabel::f(mi({1}), mi({1})), g.signed_by(SignBit(0)));
  f.components.at(OpLabel::f(mi({1}), mi({1}))).accumulate(g);  // 2 id
  auto rep = verify_morphism(t, t, f, 4);
  EXPECT_FALSE(rep.ok());
}

TEST(Bimodule, RegularBimodulePasses) {
  auto t = dg_to_f(testalg::exterior(), 5);
  auto rep = verify_regular_bimodule(t, 5, 2);
  EXPECT_TRUE(rep.ok()) << failures<Q>(rep);
  EXPECT_GT(rep.checks.size(), 50u);
}
