#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cloneforge/families.hpp"
#include "cloneforge/ising_lab.hpp"
#include "cloneforge/testing/oracles.hpp"
#include "cloneforge/testing/random.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

TEST(Series, AntiferroToFerro) {
  const SeriesCheck s = antiferro_to_ferro_series(0.6);
  EXPECT_NEAR(s.lambda_prime, 3.0, 1e-12);
  EXPECT_LE(s.error, 1e-12);
  EXPECT_THROW(antiferro_to_ferro_series(1.0), PreconditionError);
  EXPECT_THROW(antiferro_to_ferro_series(0.0), PreconditionError);
}

TEST(Chain, ClosedFormMatchesComposition) {
  for (double lam : {0.3, 2.0}) {
    for (long l = 1; l <= 6; ++l) {
      const FunctionTable chain = series_chain(lam, l);
      FunctionTable direct = scale(hising(2, lam), std::sqrt(1.0 / lam));
      for (long i = 1; i < l; ++i) direct = compose_binary(direct, scale(hising(2, lam), std::sqrt(1.0 / lam)));
      EXPECT_LE(relative_error(chain, direct), 1e-12);
    }
  }
}

TEST(Stretch, AntiferroPlan) {
  const ApproxPlan p = stretch_plan_antiferro(2.0, 5.0, 0.1);
  const auto [diag, off] = stretch_realized(p);
  EXPECT_NEAR(diag, 1.0, 1e-9);
  EXPECT_GT(off, 5.0);
  EXPECT_LT(off, 5.1);
  EXPECT_EQ(p.ell % 2, 1);
  EXPECT_LT(p.achieved_error, 0.1);
}

TEST(Stretch, FerroPlan) {
  const ApproxPlan p = stretch_plan_ferro(0.5, 0.25, 0.05);
  const auto [diag, off] = stretch_realized(p);
  EXPECT_GT(diag, 1.0);
  EXPECT_LT(diag, 1.05);
  EXPECT_NEAR(off, 0.25, 1e-9);
}

TEST(Stretch, TrivialTarget) {
  const ApproxPlan p = stretch_plan_ferro(0.5, 1.0, 0.01);
  EXPECT_TRUE(p.trivial);
  EXPECT_EQ(p.achieved_error, 0.0);
}

TEST(Dirichlet, Bounds) {
  const ApproxPlan ln2 = dirichlet_const(std::log(2.0), 1e-3);
  EXPECT_LT(ln2.achieved_error, 1e-3);
  for (double z : {1.0, -2.5, 0.0}) {
    const ApproxPlan p = dirichlet_const(z, 1e-3);
    EXPECT_LT(std::abs(static_cast<double>(p.a) + static_cast<double>(p.b) * std::log(2.0) - z), 1e-3);
  }
  EXPECT_THROW(dirichlet_const(1.0, 0.0), PreconditionError);
}

TEST(ForceOdd, FormulasEvaluateExactly) {
  for (int k : {2, 4, 6, 8}) EXPECT_EQ(eval_pps(force_odd_from_fo4(k)), force_odd(k)) << k;
  EXPECT_THROW(force_odd_from_fo4(3), PreconditionError);
  EXPECT_LE(linf_distance(eval_pps(parity_from_forceodd(2, 2.0)), parity_fn(2, 2.0)), 1e-12);
  EXPECT_LE(linf_distance(eval_pps(parity_from_forceodd(4, 0.5)), parity_fn(4, 0.5)), 1e-12);
  EXPECT_LE(linf_distance(eval_pps(parity_from_forceodd(3, 1.0)), FunctionTable::filled(3, 1.0)), 1e-12);
  EXPECT_THROW(parity_from_forceodd(2, 0.0), PreconditionError);
}

TEST(ForceOdd, PowerApproximation) {
  const ForceOddApprox a = force_odd4_approx(0.01);
  EXPECT_NEAR(a.f[0b0000], 1023.0, 1.0);
  EXPECT_NEAR(a.g[0b0001], 1.0, 1e-15);
  EXPECT_LT(a.plan.achieved_error, 0.01);
  const ForceOddApprox b = force_odd4_approx(0.001);
  EXPECT_GE(b.plan.j, a.plan.j);
}

TEST(ParityDecomposition, ReconstructsSelfDualFunctions) {
  Rng rng(61);
  for (int i = 0; i < 30; ++i) {
    const FunctionTable f = random_self_dual(rng, 1 + i % 5, 0.1, 4.0);
    const std::vector<ParityFactor> factors = sd_parity_decompose(f);
    for (const ParityFactor& pf : factors) EXPECT_EQ(weight(pf.w) % 2, 0);
    EXPECT_LE(relative_error(reconstruct_parity(factors, f.arity()), f), 1e-9);
  }
  EXPECT_THROW(sd_parity_decompose(FunctionTable(2, {1, 2, 3, 4})), PreconditionError);
  EXPECT_THROW(sd_parity_decompose(eq2()), PreconditionError);
}

TEST(PermissiveLift, ConstructiveMatchesDirect) {
  Rng rng(62);
  for (int i = 0; i < 10; ++i) {
    const FunctionTable f = random_self_dual(rng, 1 + i % 3);
    for (int j : {1, 2, 3}) {
      EXPECT_LE(relative_error(permissive_lift_constructive(f, j), permissive_lift(f, j)), 1e-12);
    }
  }
}

TEST(DeltaPin, Targets) {
  EXPECT_EQ(delta_pin(symmetric({2, 1, 0}), 3).b, 0);
  EXPECT_EQ(delta_pin(symmetric({0, 1, 2}), 3).b, 1);
  const DeltaPin d = delta_pin(FunctionTable(2, {1, 2, 5, 1}), 1);
  ASSERT_TRUE(d.split.has_value());
  EXPECT_EQ(d.base, FunctionTable(1, {3, 6}));
  EXPECT_EQ(d.b, 1);
  EXPECT_THROW(delta_pin(eq2(), 2), PreconditionError);
  const ApproxPlan p = delta_pin_plan(symmetric({2, 1, 0}), 0.01);
  EXPECT_LT(p.achieved_error, 0.01);
}

TEST(Collapse2, AllEqualTriangle) {
  const double a = 0.25;
  const FunctionTable f(3, {1, a, a, a, a, a, a, 1});
  const Collapse2 c = collapse2_factorize(f);
  EXPECT_EQ(c.kind, Collapse2::Kind::Triangle);
  EXPECT_NEAR(c.lambda1, 0.5, 1e-12);
  EXPECT_NEAR(c.lambda2, 0.5, 1e-12);
  EXPECT_NEAR(c.lambda3, 0.5, 1e-12);
  EXPECT_LE(linf_distance(realize(c), f), 1e-12);
}

TEST(Collapse2, Branches) {
  EXPECT_EQ(collapse2_factorize(FunctionTable::filled(3, 0.0)).kind, Collapse2::Kind::Zero);
  EXPECT_EQ(collapse2_factorize(eq(3)).kind, Collapse2::Kind::EqEq);
  const FunctionTable f(3, {1, 0.5, 0, 0, 0, 0, 0.5, 1});
  const Collapse2 c = collapse2_factorize(f);
  EXPECT_EQ(c.kind, Collapse2::Kind::EqIsing);
  EXPECT_LE(linf_distance(realize(c), f), 1e-12);
  EXPECT_THROW(collapse2_factorize(FunctionTable(3, {2, 1, 1, 1, 1, 1, 1, 2})), PreconditionError);
}
