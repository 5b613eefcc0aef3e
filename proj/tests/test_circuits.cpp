#include <gtest/gtest.h>

#include <vector>

#include "cloneforge/circuits.hpp"
#include "cloneforge/families.hpp"
#include "cloneforge/membership.hpp"
#include "cloneforge/testing/oracles.hpp"
#include "cloneforge/testing/random.hpp"

using namespace cloneforge;
using namespace cloneforge::testing;

TEST(Circuit, Validation) {
  // external degree must be one
  EXPECT_THROW(Circuit(CircuitKind::Match, {0}, {1, 2}, {{0, 1, 1.0}, {0, 2, 1.0}}), PreconditionError);
  // terminal edge weight must be one
  EXPECT_THROW(Circuit(CircuitKind::Match, {0}, {1}, {{0, 1, 2.0}}), PreconditionError);
  EXPECT_THROW(Circuit(CircuitKind::Match, {0}, {1, 2}, {{0, 1, 1.0}, {1, 1, 1.0}}), PreconditionError);
  EXPECT_THROW(Circuit(CircuitKind::Match, {0}, {0}, {}), PreconditionError);
  EXPECT_THROW(Circuit(CircuitKind::Even, {0}, {1, 2}, {{0, 1, 1.0}, {1, 2, 1.5}}), PreconditionError);
  EXPECT_THROW(Circuit(CircuitKind::Match, {0}, {1, 2}, {{0, 1, 1.0}, {1, 2, -1.0}}), PreconditionError);
  EXPECT_NO_THROW(Circuit(CircuitKind::Match, {0}, {1, 2}, {{0, 1, 1.0}, {1, 2, 0.5}}));
}

TEST(Circuit, SingleEdgeMatchings) {
  // u - v - w: y = 0 leaves v to w (weight 3); y = 1 takes u-v and strands w.
  const Circuit c(CircuitKind::Match, {0}, {1, 2}, {{0, 1, 1.0}, {1, 2, 3.0}});
  EXPECT_EQ(implemented_function(c).values(), (std::vector<double>{3.0, 0.0}));
}

TEST(Gadgets, FixedMatchGadgets) {
  EXPECT_LE(linf_distance(implemented_function(gadget_eq_match()), scale(eq2(), 0.5)), 1e-15);
  EXPECT_LE(linf_distance(implemented_function(gadget_match_ising_half()), FunctionTable(2, {0.75, 0, 0, 0.25})), 1e-15);
  EXPECT_EQ(realized_pbf(gadget_match_ising_half()), hising(2, 0.5));
}

TEST(Gadgets, FictitiousAndSum) {
  Rng rng(51);
  for (CircuitKind kind : {CircuitKind::Match, CircuitKind::Even}) {
    for (int i = 0; i < 20; ++i) {
      const int k = 1 + i % 3;
      const Circuit c = random_circuit(rng, kind, CircuitShape{k, 4, 5, 0.2, 1.0});
      const FunctionTable f = realized_values(c);
      EXPECT_LE(relative_error(realized_values(gadget_fictitious(c)), add_fictitious(f)), 1e-12);
      // Even weights cannot exceed one, so the even sum gadget stops at half.
      const double factor = kind == CircuitKind::Even ? 2.0 : 1.0;
      EXPECT_LE(relative_error(scale(realized_values(gadget_sum(c)), factor), sum_out_last(f)), 1e-12);
    }
  }
}

TEST(Gadgets, ProductIsConvolution) {
  Rng rng(52);
  for (CircuitKind kind : {CircuitKind::Match, CircuitKind::Even}) {
    for (int i = 0; i < 20; ++i) {
      const int k = 1 + i % 3;
      const Circuit f = random_circuit(rng, kind, CircuitShape{k, 4, 4, 0.2, 1.0});
      const Circuit g = random_circuit(rng, kind, CircuitShape{k, 3, 4, 0.2, 1.0});
      EXPECT_LE(relative_error(implemented_function(gadget_product(f, g)),
                               convolve(implemented_function(f), implemented_function(g))),
                1e-12);
    }
  }
}

TEST(Gadgets, EvenIsing) {
  for (double lam : {0.0, 0.25, 0.5, 0.9}) {
    const FunctionTable scaled = scale(implemented_function(gadget_even_ising(lam)), even_ising_scale(lam));
    EXPECT_LE(linf_distance(inverse_transform(scaled), hising(2, lam)), 1e-12);
  }
  EXPECT_THROW(gadget_even_ising(-0.1), PreconditionError);
  EXPECT_THROW(gadget_even_ising(1.0), PreconditionError);
}

TEST(Sdp3, RealizesTransform) {
  const FunctionTable fh = signed_table(3, {1.0, 0, 0, 0.25, 0, 0.5, 0.125, 0});
  EXPECT_LE(linf_distance(implemented_function(gadget_sdp3(1.0, 0.25, 0.5, 0.125)), fh), 1e-15);
  EXPECT_THROW(gadget_sdp3(0.0, 0.1, 0.1, 0.1), PreconditionError);
  EXPECT_THROW(gadget_sdp3(1.0, -0.1, 0.1, 0.1), PreconditionError);
}

TEST(Sym4, CasesAndRealization) {
  EXPECT_EQ(plan_sym4(4.0, 1.5, 0.0).which, Sym4Plan::Case::NoTop);
  EXPECT_EQ(plan_sym4(1.0, 0.0, 0.0).which, Sym4Plan::Case::Paths);
  EXPECT_EQ(plan_sym4(0.0, 0.0, 0.0).which, Sym4Plan::Case::Zero);
  EXPECT_EQ(plan_sym4(1.0, 0.5, 0.75).which, Sym4Plan::Case::NoPair);
  EXPECT_EQ(plan_sym4(1.0, 0.5, 0.25).which, Sym4Plan::Case::Finite);
  EXPECT_THROW(plan_sym4(1.0, 0.1, 0.5), PreconditionError);  // 3 C2^2 < C0 C4
  EXPECT_THROW(plan_sym4(0.0, 0.1, 0.0), PreconditionError);

  const FunctionTable f = symmetric({13, 4, 1, 4, 13});
  EXPECT_LE(linf_distance(realized_pbf(gadget_sym4(4.0, 1.5, 0.0)), f), 1e-12);
  for (double c4 : {0.25, 0.5, 0.75}) {
    const FunctionTable want = signed_symmetric({1.0, 0, 0.5, 0, c4});
    EXPECT_LE(linf_distance(implemented_function(gadget_sym4(1.0, 0.5, c4)), want), 1e-12) << c4;
  }
}

TEST(Containment, DominantCircuitsAreSdp) {
  Rng rng(53);
  for (int i = 0; i < 30; ++i) {
    const Circuit c = random_dominant_match(rng, 1 + i % 4, 3);
    const FunctionTable f = realized_pbf(c);
    EXPECT_TRUE(is_sdp(f, 1e-9 * std::max(1.0, f[0]) * static_cast<double>(f.size())));
  }
}

TEST(EvenToIsing, ClosedFormConstant) {
  const IsingSystem s = even_to_ising(gadget_even_ising(0.25));
  ASSERT_EQ(s.interactions.size(), 1u);
  EXPECT_NEAR(s.interactions[0].lambda, 0.25, 1e-15);
  Rng rng(54);
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + i % 3;
    const Circuit c = random_circuit(rng, CircuitKind::Even, CircuitShape{k, 5, 6, 0.05, 1.0});
    const IsingSystem sys = even_to_ising(c);
    const FunctionTable want = realized_values(c);
    for (std::size_t x = 0; x < want.size(); ++x) {
      EXPECT_NEAR(eval_ising(sys, bits_of(x, k)), want[x], 1e-9 * std::max(1.0, want[x]));
    }
  }
  EXPECT_THROW(even_to_ising(gadget_eq_match()), PreconditionError);
}
