// cloneforge command-line front end.
//
// Exit codes: 0 success, 1 I/O or schema error, 2 violated precondition,
// 3 internal verification failure. The acceptance runner exits 1 when a check fails.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cloneforge/cloneforge.hpp"
#include "cloneforge/io.hpp"
#include "cloneforge/testing/acceptance.hpp"

namespace cf = cloneforge;
using cf::json;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return json::parse(text);
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : cf::detail::split(s, ',')) out.push_back(cf::detail::parse_real(part, "--coeffs"));
  return out;
}

// Accepts either a function object or a bare name like "hising:3:0.5".
cf::FunctionTable read_function(const std::string& path) {
  const json j = read_json(path);
  if (j.is_string()) return cf::named_function(j.get<std::string>());
  return cf::function_from_json(j);
}

json circuit_output(const cf::Circuit& c, double scale) {
  json j = cf::to_json(c);
  if (c.kind() == cf::CircuitKind::Even) j["scale"] = scale;
  return j;
}

json build_gadget(const std::string& name, const std::vector<std::string>& inputs, double lambda,
                  const std::string& coeffs) {
  auto need_inputs = [&](std::size_t n) {
    if (inputs.size() != n) {
      throw cf::PreconditionError("gadget " + name + " takes " + std::to_string(n) + " --input circuit(s)");
    }
  };
  if (name == "eq-match") return circuit_output(cf::gadget_eq_match(), 1.0);
  if (name == "ising-half") return circuit_output(cf::gadget_match_ising_half(), 1.0);
  if (name == "even-eq") return circuit_output(cf::gadget_even_eq(), cf::even_ising_scale(0.0));
  if (name == "even-ising") return circuit_output(cf::gadget_even_ising(lambda), cf::even_ising_scale(lambda));
  if (name == "sdp3" || name == "sym4") {
    std::vector<double> c;
    if (!coeffs.empty()) {
      c = parse_list(coeffs);
    } else {
      need_inputs(1);
      const cf::FunctionTable fh = cf::transform(read_function(inputs[0]));
      if (name == "sdp3" && fh.arity() == 3) c = {fh[0b000], fh[0b011], fh[0b101], fh[0b110]};
      if (name == "sym4" && fh.arity() == 4) c = {fh[0b0000], fh[0b0011], fh[0b1111]};
      if (c.empty()) throw cf::PreconditionError("function has the wrong arity for gadget " + name);
    }
    if (name == "sdp3") {
      if (c.size() != 4) throw cf::PreconditionError("sdp3 takes four coefficients a,b,c,d");
      return circuit_output(cf::gadget_sdp3(c[0], c[1], c[2], c[3]), 1.0);
    }
    if (c.size() != 3) throw cf::PreconditionError("sym4 takes three coefficients C0,C2,C4");
    return circuit_output(cf::gadget_sym4(c[0], c[1], c[2]), 1.0);
  }
  if (name == "fictitious" || name == "sum") {
    need_inputs(1);
    const cf::Circuit c = cf::circuit_from_json(read_json(inputs[0]));
    return circuit_output(name == "sum" ? cf::gadget_sum(c) : cf::gadget_fictitious(c), 1.0);
  }
  if (name == "product") {
    need_inputs(2);
    return circuit_output(cf::gadget_product(cf::circuit_from_json(read_json(inputs[0])),
                                             cf::circuit_from_json(read_json(inputs[1]))),
                          1.0);
  }
  throw cf::PreconditionError("unknown gadget " + name);
}

json approximate(const std::string& target, double eps, double source) {
  const std::vector<std::string> parts = cf::detail::split(target, ':');
  if (parts[0] == "ising" && parts.size() == 2) {
    const double lam = cf::detail::parse_real(parts[1], "--target");
    if (!(lam > 0.0)) throw cf::PreconditionError("target Ising weight must be positive");
    cf::ApproxPlan p;
    if (lam > 1.0) {
      p = cf::stretch_plan_antiferro(source > 0.0 ? source : 2.0, lam, eps);
    } else if (lam < 1.0) {
      p = cf::stretch_plan_ferro(source > 0.0 ? source : 0.5, lam, eps);
    } else {
      p = cf::trivial_stretch(cf::ApproxPlan::Variant::FerroStretch, source > 0.0 ? source : 0.5, eps);
    }
    return cf::to_json(p);
  }
  if (parts[0] == "forceodd4" && parts.size() == 1) {
    const cf::ForceOddApprox fo = cf::force_odd4_approx(eps);
    json j = cf::to_json(fo.plan);
    j["function"] = cf::to_json(fo.gj);
    return j;
  }
  if (parts[0] == "const" && parts.size() == 2) {
    return cf::to_json(cf::dirichlet_const(cf::detail::parse_real(parts[1], "--target"), eps));
  }
  throw cf::SchemaError("unknown --target " + target + " (expected ising:<lambda>, forceodd4 or const:<z>)");
}

int verify(const std::vector<std::string>& only) {
  using namespace cf::testing;
  std::vector<Check> chosen;
  for (const Check& c : acceptance_checks()) {
    bool hit = only.empty();
    for (const std::string& tag : only) hit = hit || tag == c.tag || tag == std::to_string(c.id) || (tag == "converses" && c.tag == "collapse1");
    if (hit) chosen.push_back(c);
  }
  if (chosen.empty()) throw cf::PreconditionError("no acceptance check matches the selection");
  int failed = 0;
  for (const Check& c : chosen) {
    const CheckResult r = run_check(c);
    std::printf("[%s] %2d %-13s %s\n", r.passed ? "PASS" : "FAIL", r.id, r.tag.c_str(), r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%zu/%zu checks passed\n", chosen.size() - static_cast<std::size_t>(failed), chosen.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* tol = std::getenv("CLONEFORGE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(tol, &end);
    if (end == tol || *end != '\0' || !(v >= 0.0)) {
      std::cerr << "error: CLONEFORGE_TOL must be a non-negative number\n";
      return 1;
    }
    cf::set_tolerance(v);
  }

  CLI::App app{"Pseudo-Boolean functional clone toolkit"};
  app.require_subcommand(1);

  std::string input = "-";
  bool inverse = false;
  auto* transform = app.add_subcommand("transform", "Fourier transform of a function table");
  transform->add_option("--input", input, "function JSON file, or - for stdin");
  transform->add_flag("--inverse", inverse, "apply the inverse transform");

  double alpha = 1.0;
  auto* classify = app.add_subcommand("classify", "membership report for a non-negative function");
  classify->add_option("--input", input, "function JSON file, or - for stdin");
  classify->add_option("--alpha", alpha, "monotonicity parameter");

  auto* eval_circuit = app.add_subcommand("eval-circuit", "implemented and realized functions of a circuit");
  eval_circuit->add_option("--input", input, "circuit JSON file, or - for stdin");

  std::string gadget;
  std::vector<std::string> gadget_inputs;
  double lambda = 0.5;
  std::string coeffs;
  auto* build = app.add_subcommand("build-gadget", "emit a gadget circuit");
  build->add_option("name", gadget,
                    "eq-match | ising-half | even-eq | even-ising | sdp3 | sym4 | fictitious | sum | product")
      ->required();
  build->add_option("--input", gadget_inputs, "input circuit(s), or the function for sdp3/sym4");
  build->add_option("--lambda", lambda, "edge interaction for even-ising");
  build->add_option("--coeffs", coeffs, "comma-separated coefficients for sdp3 (a,b,c,d) or sym4 (C0,C2,C4)");

  std::string target;
  double eps = 0.01;
  double source = 0.0;
  auto* approx = app.add_subcommand("approximate", "finite approximation plan");
  approx->add_option("--target", target, "ising:<lambda> | forceodd4 | const:<z>")->required();
  approx->add_option("--eps", eps, "requested accuracy");
  approx->add_option("--source", source, "source Ising weight for ising targets");

  auto* eval_pps = app.add_subcommand("eval-pps", "evaluate a pps-formula");
  eval_pps->add_option("--input", input, "formula JSON file, or - for stdin");

  std::vector<std::string> only;
  bool all = false;
  auto* verify_cmd = app.add_subcommand("verify-paper", "run the acceptance checks");
  verify_cmd->add_option("--only", only, "check tags or ids to run");
  verify_cmd->add_flag("--all", all, "run every check (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*transform) {
      const cf::FunctionTable f = read_function(input);
      emit(cf::to_json(inverse ? cf::inverse_transform(f) : cf::transform(f)));
    } else if (*classify) {
      emit(cf::to_json(cf::classify(read_function(input), alpha)));
    } else if (*eval_circuit) {
      const cf::Circuit c = cf::circuit_from_json(read_json(input));
      const cf::FunctionTable fh = cf::implemented_function(c);
      emit(json{{"implemented", cf::to_json(fh)}, {"realized", cf::to_json(cf::inverse_transform(fh))}});
    } else if (*build) {
      emit(build_gadget(gadget, gadget_inputs, lambda, coeffs));
    } else if (*approx) {
      emit(approximate(target, eps, source));
    } else if (*eval_pps) {
      emit(cf::to_json(cf::eval_pps(cf::formula_from_json(read_json(input)))));
    } else if (*verify_cmd) {
      if (all) only.clear();
      return verify(only);
    }
  } catch (const cf::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cf::VerificationError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const cf::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
