#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cloneforge/families.hpp"
#include "cloneforge/fourier.hpp"
#include "cloneforge/testing/oracles.hpp"
#include "cloneforge/testing/random.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

TEST(Transform, KnownValues) {
  EXPECT_LE(linf_distance(transform(eq2()), scale(eq2(), 0.5)), 1e-15);
  EXPECT_LE(linf_distance(transform(symmetric({13, 4, 1, 4, 13})), signed_symmetric({4, 0, 1.5, 0, 0})), 1e-15);
  EXPECT_LE(linf_distance(transform(symmetric({0, 1, 0})), signed_symmetric({0.5, 0, -0.5})), 1e-15);
  EXPECT_TRUE(transform(eq2()).is_signed());
  EXPECT_EQ(transform(constant(3.0))[0], 3.0);
}

TEST(Transform, InverseRoundTrip) {
  Rng rng(21);
  for (int k = 0; k <= 6; ++k) {
    const FunctionTable f = random_table(rng, k);
    EXPECT_LE(linf_distance(inverse_transform(transform(f)), f), 1e-12);
    EXPECT_LE(linf_distance(transform(f), naive_transform(f)), 1e-12);
  }
}

TEST(Transform, ConvolutionOfProducts) {
  Rng rng(22);
  for (int k = 0; k <= 5; ++k) {
    const FunctionTable f = random_table(rng, k), g = random_table(rng, k);
    EXPECT_LE(linf_distance(transform(product(f, g)), convolve(transform(f), transform(g))), 1e-12);
  }
  EXPECT_THROW(convolve(transform(eq2()), transform(eq(3))), PreconditionError);
}

TEST(ClosedForms, HypergraphIsing) {
  for (int k = 0; k <= 7; ++k) {
    for (double lam : {0.0, 0.3, 1.0, 2.5}) {
      EXPECT_LE(linf_distance(hising_hat_table(k, lam), transform(hising(k, lam))), 1e-13) << k << " " << lam;
    }
  }
  EXPECT_DOUBLE_EQ(hising_hat(4, 0.5, 0b0000), 9.0 / 16);
  EXPECT_DOUBLE_EQ(hising_hat(4, 0.5, 0b0110), 1.0 / 16);
  EXPECT_DOUBLE_EQ(hising_hat(4, 0.5, 0b0100), 0.0);
}

TEST(ClosedForms, Parity) {
  for (int k = 1; k <= 7; ++k) {
    for (double lam : {0.0, 0.5, std::numbers::e}) {
      EXPECT_LE(linf_distance(parity_hat(k, lam), transform(parity_fn(k, lam))), 1e-13);
    }
  }
}

TEST(NegativeCoefficient, ReductionMovesCoefficientToTop) {
  const FunctionTable f = symmetric({0, 1, 0});
  const FunctionTable g = neg_coeff_reduce(f, 0b11);
  EXPECT_EQ(g, f);
  // XOR(x1, x3) with x2 fictitious; summing x2 doubles the coefficient.
  std::vector<double> v(8);
  for (std::size_t x = 0; x < 8; ++x) v[x] = bit_at(x, 0, 3) != bit_at(x, 2, 3) ? 1.0 : 0.0;
  const FunctionTable xr(3, v);
  const double c = transform(xr)[0b101];
  ASSERT_LT(c, 0.0);
  const FunctionTable r = neg_coeff_reduce(xr, 0b101);
  EXPECT_EQ(r.arity(), 2);
  EXPECT_NEAR(transform(r)[0b11], 2.0 * c, 1e-15);
  EXPECT_THROW(neg_coeff_reduce(eq2(), 0b11), PreconditionError);
}

TEST(TechLift, NegativeTopCoefficientSurvives) {
  const FunctionTable h = tech_lift(symmetric({0, 1, 0}), 1);
  EXPECT_NEAR(transform(h)[1], -0.5, 1e-15);
  const FunctionTable h3 = tech_lift(symmetric({0, 1, 0}), 3);
  EXPECT_NEAR(transform(h3)[7], -0.5, 1e-15);
  EXPECT_THROW(tech_lift(eq2(), 2), PreconditionError);
}

TEST(Nand, WitnessYieldsNand) {
  const NandConstruction c = nand_from_witness(FunctionTable(1, {0.25, 1.0}));
  EXPECT_LE(linf_distance(c.nand, symmetric({1, 1, 0})), 1e-12);
  EXPECT_THROW(nand_from_witness(FunctionTable(1, {0.75, 1.0})), PreconditionError);
}

TEST(Nand, PoweringPushesBelowHalf) {
  const PoweredWitness p = power_witness(FunctionTable(1, {0.9, 1.8}));
  EXPECT_GE(p.j, 1);
  EXPECT_LT(p.h[0], 0.5);
  EXPECT_DOUBLE_EQ(p.h[1], 1.0);
}
