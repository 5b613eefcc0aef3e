#ifndef CLONEFORGE_PPS_HPP
#define CLONEFORGE_PPS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/families.hpp"
#include "cloneforge/table.hpp"

namespace cloneforge {

inline constexpr int kMaxPpsVariables = 16;

struct Atom {
  FunctionTable fn;
  std::vector<int> args;  // variable indices, 0-based; free variables first
};

// sum over bound variables of the product of atoms. Variables
// 0..free_arity-1 are free, the next bound_count are bound.
struct PpsFormula {
  int free_arity = 0;
  int bound_count = 0;
  std::vector<Atom> atoms;

  int variable_count() const { return free_arity + bound_count; }

  void validate() const {
    if (free_arity < 0 || bound_count < 0) throw PreconditionError("negative variable count");
    if (free_arity > kMaxArity) throw PreconditionError("free arity exceeds the cap");
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const Atom& atom = atoms[a];
      if (atom.fn.is_signed()) {
        throw PreconditionError("atom " + std::to_string(a) + " uses a signed table");
      }
      if (static_cast<int>(atom.args.size()) != atom.fn.arity()) {
        throw PreconditionError("atom " + std::to_string(a) + " has " +
                                std::to_string(atom.args.size()) + " args for a function of arity " +
                                std::to_string(atom.fn.arity()));
      }
      for (int v : atom.args) {
        if (v < 0 || v >= variable_count()) {
          throw PreconditionError("atom " + std::to_string(a) + " refers to variable " +
                                  std::to_string(v) + " out of range");
        }
      }
    }
  }
};

inline FunctionTable eval_pps(const PpsFormula& phi) {
  phi.validate();
  const int n = phi.variable_count();
  if (n > kMaxPpsVariables) throw PreconditionError("too many variables to evaluate");
  const int k = phi.free_arity;
  const int m = phi.bound_count;
  std::vector<double> out(std::size_t{1} << k, 0.0);
  for (std::size_t fx = 0; fx < out.size(); ++fx) {
    double total = 0.0;
    for (std::size_t bx = 0; bx < (std::size_t{1} << m); ++bx) {
      const std::size_t assignment = (fx << m) | bx;
      double term = 1.0;
      for (const Atom& atom : phi.atoms) {
        std::size_t idx = 0;
        for (int v : atom.args) idx = (idx << 1) | static_cast<std::size_t>(bit_at(assignment, v, n));
        term *= atom.fn[idx];
        if (term == 0.0) break;
      }
      total += term;
    }
    out[fx] = total;
  }
  return FunctionTable(k, std::move(out));
}

// Adds `sub`'s atoms to `host`, binding sub's free variables to `args` (host
// variable indices) and giving sub's bound variables fresh bound slots.
inline void embed(PpsFormula& host, const PpsFormula& sub, std::span<const int> args) {
  if (static_cast<int>(args.size()) != sub.free_arity) throw PreconditionError("embedding arity mismatch");
  const int first_new = host.variable_count();
  host.bound_count += sub.bound_count;
  for (const Atom& atom : sub.atoms) {
    Atom copy{atom.fn, {}};
    for (int v : atom.args) {
      copy.args.push_back(v < sub.free_arity ? args[static_cast<std::size_t>(v)]
                                             : first_new + (v - sub.free_arity));
    }
    host.atoms.push_back(std::move(copy));
  }
}

struct CloneStep {
  enum class Kind { Atom, Product, SumOut };
  Kind kind = Kind::Product;
  FunctionTable fn;
  std::vector<int> args;
  int arity = 0;

  // fn applied to the listed positions of an arity-n function.
  static CloneStep atom(FunctionTable fn, std::vector<int> args, int n) {
    return {Kind::Atom, std::move(fn), std::move(args), n};
  }
  static CloneStep product() { return {Kind::Product, {}, {}, 0}; }
  static CloneStep sum_out() { return {Kind::SumOut, {}, {}, 0}; }
};

struct CloneWitness {
  PpsFormula formula;     // product-then-sum normal form
  FunctionTable stepwise; // the same function computed one closure step at a time
};

// Runs a postfix program of closure steps on a stack.
inline CloneWitness compose_clone_witness(std::span<const CloneStep> steps) {
  std::vector<CloneWitness> stack;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const CloneStep& step = steps[s];
    const std::string where = "step " + std::to_string(s) + ": ";
    switch (step.kind) {
      case CloneStep::Kind::Atom: {
        if (step.arity < 0 || step.arity > kMaxArity) throw PreconditionError(where + "arity out of range");
        PpsFormula phi{step.arity, 0, {Atom{step.fn, step.args}}};
        try {
          phi.validate();
        } catch (const PreconditionError& e) {
          throw PreconditionError(where + e.what());
        }
        std::vector<double> v(std::size_t{1} << step.arity);
        for (std::size_t x = 0; x < v.size(); ++x) {
          std::size_t idx = 0;
          for (int a : step.args) idx = (idx << 1) | static_cast<std::size_t>(bit_at(x, a, step.arity));
          v[x] = step.fn[idx];
        }
        stack.push_back({std::move(phi), FunctionTable(step.arity, std::move(v))});
        break;
      }
      case CloneStep::Kind::Product: {
        if (stack.size() < 2) throw PreconditionError(where + "product needs two operands");
        CloneWitness rhs = std::move(stack.back());
        stack.pop_back();
        CloneWitness& lhs = stack.back();
        if (lhs.formula.free_arity != rhs.formula.free_arity) {
          throw PreconditionError(where + "product operands differ in arity");
        }
        const int n = lhs.formula.free_arity;
        const int shift = lhs.formula.bound_count;
        for (Atom& atom : rhs.formula.atoms) {
          for (int& v : atom.args) if (v >= n) v += shift;
          lhs.formula.atoms.push_back(std::move(atom));
        }
        lhs.formula.bound_count += rhs.formula.bound_count;
        lhs.stepwise = cloneforge::product(lhs.stepwise, rhs.stepwise);
        break;
      }
      case CloneStep::Kind::SumOut: {
        if (stack.empty()) throw PreconditionError(where + "sum-out needs an operand");
        CloneWitness& top = stack.back();
        if (top.formula.free_arity == 0) throw PreconditionError(where + "nothing left to sum out");
        // The last free variable becomes the first bound one; indices are unchanged.
        top.formula.free_arity -= 1;
        top.formula.bound_count += 1;
        top.stepwise = sum_out_last(top.stepwise);
        break;
      }
    }
  }
  if (stack.size() != 1) {
    throw PreconditionError("program leaves " + std::to_string(stack.size()) +
                            " values on the stack, expected 1");
  }
  return std::move(stack.front());
}

// f(x) = tilde(f)(representatives of x) * prod EQ(x_i, x_rep(i)).
inline PpsFormula expand_tilde(const FunctionTable& f, double tol = tolerance()) {
  const ArgPartition p = equiv_relation(f, tol);
  PpsFormula phi{f.arity(), 0, {}};
  std::vector<int> reps;
  for (const auto& block : p.blocks) reps.push_back(block.front());
  phi.atoms.push_back({tilde(f, tol), reps});
  for (const auto& block : p.blocks) {
    for (std::size_t i = 1; i < block.size(); ++i) phi.atoms.push_back({eq2(), {block.front(), block[i]}});
  }
  return phi;
}

// tilde(f)(z) = sum over the non-representative coordinates of f.
inline PpsFormula collapse_duplicates(const FunctionTable& f, double tol = tolerance()) {
  const ArgPartition p = equiv_relation(f, tol);
  const int l = static_cast<int>(p.blocks.size());
  PpsFormula phi{l, f.arity() - l, {}};
  std::vector<int> args(static_cast<std::size_t>(f.arity()));
  int next_bound = l;
  for (int b = 0; b < l; ++b) {
    const auto& block = p.blocks[static_cast<std::size_t>(b)];
    args[static_cast<std::size_t>(block.front())] = b;
    for (std::size_t i = 1; i < block.size(); ++i) args[static_cast<std::size_t>(block[i])] = next_bound++;
  }
  phi.atoms.push_back({f, args});
  return phi;
}

}  // namespace cloneforge

#endif
