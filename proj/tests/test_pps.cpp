#include <gtest/gtest.h>

#include <vector>

#include "cloneforge/families.hpp"
#include "cloneforge/pps.hpp"
#include "cloneforge/testing/random.hpp"

using namespace cloneforge;

namespace {
const FunctionTable kXor = symmetric({0, 1, 0});
}

TEST(Pps, XorExample) {
  const PpsFormula phi{3, 1, {Atom{kXor, {0, 3}}, Atom{kXor, {1, 3}}, Atom{kXor, {0, 2}}}};
  const FunctionTable h = eval_pps(phi);
  std::vector<double> want(8, 0.0);
  want[0b110] = want[0b001] = 1.0;
  EXPECT_EQ(h, FunctionTable(3, want));
}

TEST(Pps, EmptyProductIsOne) {
  EXPECT_EQ(eval_pps(PpsFormula{2, 0, {}}), FunctionTable::filled(2, 1.0));
  EXPECT_EQ(eval_pps(PpsFormula{0, 2, {}}), constant(4.0));
}

TEST(Pps, ValidationErrors) {
  EXPECT_THROW(eval_pps(PpsFormula{2, 0, {Atom{eq2(), {0}}}}), PreconditionError);
  EXPECT_THROW(eval_pps(PpsFormula{2, 0, {Atom{eq2(), {0, 2}}}}), PreconditionError);
  EXPECT_THROW(eval_pps(PpsFormula{2, 0, {Atom{eq2().as_signed(), {0, 1}}}}), PreconditionError);
  EXPECT_THROW(eval_pps(PpsFormula{10, 7, {}}), PreconditionError);
}

TEST(Pps, EmbedRenamesBoundVariables) {
  // host(x, y) = sum_z XOR(x, z) * [sub(z, y)], sub(a, b) = sum_w XOR(a, w) XOR(w, b).
  PpsFormula sub{2, 1, {Atom{kXor, {0, 2}}, Atom{kXor, {2, 1}}}};
  PpsFormula host{2, 1, {Atom{kXor, {0, 2}}}};
  const std::vector<int> args{2, 1};
  embed(host, sub, args);
  EXPECT_EQ(host.bound_count, 2);
  // sub = EQ, so host = XOR.
  EXPECT_EQ(eval_pps(sub), eq2());
  EXPECT_EQ(eval_pps(host), kXor);
}

TEST(CloneWitness, StepwiseMatchesFormula) {
  cloneforge::testing::Rng rng(31);
  const FunctionTable f = cloneforge::testing::random_table(rng, 2);
  const FunctionTable g = cloneforge::testing::random_table(rng, 3);
  // sum_z f(x, z) g(z, y, x)
  const std::vector<CloneStep> prog{
      CloneStep::atom(f, {0, 2}, 3),
      CloneStep::atom(g, {2, 1, 0}, 3),
      CloneStep::product(),
      CloneStep::sum_out(),
  };
  const CloneWitness w = compose_clone_witness(prog);
  EXPECT_EQ(w.formula.free_arity, 2);
  EXPECT_EQ(w.formula.bound_count, 1);
  EXPECT_LE(linf_distance(eval_pps(w.formula), w.stepwise), 1e-12);
  double v = 0.0;
  for (int z = 0; z < 2; ++z) v += eval(f, {1, z}) * eval(g, {z, 0, 1});
  EXPECT_NEAR(eval(w.stepwise, {1, 0}), v, 1e-12);
}

TEST(CloneWitness, ProductAfterSums) {
  const std::vector<CloneStep> prog{
      CloneStep::atom(kXor, {0, 1}, 2), CloneStep::sum_out(),
      CloneStep::atom(eq2(), {0, 1}, 2), CloneStep::sum_out(),
      CloneStep::product(),
  };
  const CloneWitness w = compose_clone_witness(prog);
  EXPECT_EQ(w.formula.bound_count, 2);
  EXPECT_EQ(eval_pps(w.formula), w.stepwise);
  EXPECT_EQ(w.stepwise, FunctionTable(1, {1, 1}));
}

TEST(CloneWitness, MalformedPrograms) {
  const std::vector<CloneStep> lonely{CloneStep::product()};
  EXPECT_THROW(compose_clone_witness(lonely), PreconditionError);
  const std::vector<CloneStep> two{CloneStep::atom(eq2(), {0, 1}, 2), CloneStep::atom(eq2(), {0, 1}, 2)};
  EXPECT_THROW(compose_clone_witness(two), PreconditionError);
  const std::vector<CloneStep> mismatch{CloneStep::atom(eq2(), {0, 1}, 2), CloneStep::atom(eq(3), {0, 1, 2}, 3),
                                        CloneStep::product()};
  EXPECT_THROW(compose_clone_witness(mismatch), PreconditionError);
}

TEST(Tilde, ExpandAndCollapseAreInverse) {
  std::vector<double> v(8, 0.0);
  for (std::size_t x = 0; x < 8; ++x) if (bit_at(x, 0, 3) == bit_at(x, 2, 3)) v[x] = 1.0 + static_cast<double>(x);
  const FunctionTable f(3, v);
  EXPECT_EQ(eval_pps(expand_tilde(f)), f);
  EXPECT_EQ(eval_pps(collapse_duplicates(f)), tilde(f));
}
