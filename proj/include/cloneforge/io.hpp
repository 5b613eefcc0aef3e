#ifndef CLONEFORGE_IO_HPP
#define CLONEFORGE_IO_HPP

// JSON encodings of tables, circuits, formulas, reports and plans.
// Formula arguments are 1-based in JSON and 0-based in memory.

#include <string>
#include <vector>

#include "json.hpp"

#include "cloneforge/circuits.hpp"
#include "cloneforge/families.hpp"
#include "cloneforge/ising_lab.hpp"
#include "cloneforge/membership.hpp"
#include "cloneforge/pps.hpp"
#include "cloneforge/table.hpp"

namespace cloneforge {

using json = nlohmann::json;

// Malformed or mistyped JSON input.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const json& member(const json& j, const char* key) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing key \"") + key + "\"");
  return *it;
}

inline double number(const json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& e : j) out.push_back(number(e, what));
  return out;
}

inline double parse_real(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw SchemaError("bad number \"" + s + "\" in " + context);
    return v;
  } catch (const std::logic_error&) {
    throw SchemaError("bad number \"" + s + "\" in " + context);
  }
}

inline int parse_int(const std::string& s, const std::string& context) {
  const double v = parse_real(s, context);
  if (v != static_cast<int>(v)) throw SchemaError("expected an integer in " + context);
  return static_cast<int>(v);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline json to_json(const FunctionTable& f) {
  return json{{"arity", f.arity()}, {"values", f.values()}, {"signed", f.is_signed()}};
}

inline FunctionTable function_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("function must be a JSON object");
  bool is_signed = false;
  if (auto it = j.find("signed"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaError("\"signed\" must be a boolean");
    is_signed = it->get<bool>();
  }
  const Signedness s = is_signed ? Signedness::Signed : Signedness::NonNegative;
  if (auto it = j.find("symmetric"); it != j.end()) {
    FunctionTable f = from_symmetric(SymmetricSpec{detail::numbers(*it, "\"symmetric\"")});
    if (f.is_signed() && !is_signed) {
      throw PreconditionError("symmetric weights are negative but \"signed\" is not set");
    }
    return FunctionTable(f.arity(), f.values(), s);
  }
  const int k = detail::integer(detail::member(j, "arity"), "\"arity\"");
  return FunctionTable(k, detail::numbers(detail::member(j, "values"), "\"values\""), s);
}

// Named families: "eq", "hising:k:lambda", "parity:k:lambda", "forceodd:k".
inline FunctionTable named_function(const std::string& name) {
  const std::vector<std::string> parts = detail::split(name, ':');
  const std::string& head = parts.front();
  if (head == "eq" && parts.size() == 1) return eq2();
  if (head == "eq" && parts.size() == 2) return eq(detail::parse_int(parts[1], name));
  if (head == "hising" && parts.size() == 3) {
    return hising(detail::parse_int(parts[1], name), detail::parse_real(parts[2], name));
  }
  if (head == "parity" && parts.size() == 3) {
    return parity_fn(detail::parse_int(parts[1], name), detail::parse_real(parts[2], name));
  }
  if (head == "forceodd" && parts.size() == 2) return force_odd(detail::parse_int(parts[1], name));
  throw SchemaError("unknown function family \"" + name + "\"");
}

inline json to_json(const PpsFormula& phi) {
  json atoms = json::array();
  for (const Atom& a : phi.atoms) {
    std::vector<int> args;
    for (int v : a.args) args.push_back(v + 1);
    atoms.push_back({{"fn", to_json(a.fn)}, {"args", args}});
  }
  return json{{"free", phi.free_arity}, {"bound", phi.bound_count}, {"atoms", atoms}};
}

inline PpsFormula formula_from_json(const json& j) {
  PpsFormula phi;
  phi.free_arity = detail::integer(detail::member(j, "free"), "\"free\"");
  phi.bound_count = detail::integer(detail::member(j, "bound"), "\"bound\"");
  const json& atoms = detail::member(j, "atoms");
  if (!atoms.is_array()) throw SchemaError("\"atoms\" must be an array");
  for (const json& a : atoms) {
    const json& fn = detail::member(a, "fn");
    Atom atom{fn.is_string() ? named_function(fn.get<std::string>()) : function_from_json(fn), {}};
    const json& args = detail::member(a, "args");
    if (!args.is_array()) throw SchemaError("\"args\" must be an array");
    for (const json& v : args) atom.args.push_back(detail::integer(v, "argument index") - 1);
    phi.atoms.push_back(std::move(atom));
  }
  phi.validate();
  return phi;
}

inline json to_json(const Circuit& c) {
  json edges = json::array();
  for (const Edge& e : c.edges()) edges.push_back(json::array({e.a, e.b, e.w}));
  return json{{"kind", to_string(c.kind())}, {"externals", c.externals()}, {"internals", c.internals()}, {"edges", edges}};
}

inline Circuit circuit_from_json(const json& j) {
  const json& kind = detail::member(j, "kind");
  if (!kind.is_string()) throw SchemaError("\"kind\" must be a string");
  CircuitKind k;
  if (kind == "match") k = CircuitKind::Match;
  else if (kind == "even") k = CircuitKind::Even;
  else throw SchemaError("\"kind\" must be \"match\" or \"even\"");
  auto ids = [](const json& arr, const char* what) {
    if (!arr.is_array()) throw SchemaError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const json& e : arr) out.push_back(detail::integer(e, what));
    return out;
  };
  std::vector<Edge> edges;
  const json& ej = detail::member(j, "edges");
  if (!ej.is_array()) throw SchemaError("\"edges\" must be an array");
  for (const json& e : ej) {
    if (!e.is_array() || e.size() != 3) throw SchemaError("each edge must be [a, b, w]");
    edges.push_back({detail::integer(e[0], "edge endpoint"), detail::integer(e[1], "edge endpoint"),
                     detail::number(e[2], "edge weight")});
  }
  return Circuit(k, ids(detail::member(j, "externals"), "\"externals\""),
                 ids(detail::member(j, "internals"), "\"internals\""), std::move(edges));
}

inline const char* to_string(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::Tuple: return "tuple";
    case Witness::Kind::Coefficient: return "coefficient";
    case Witness::Kind::Pair: return "pair";
    case Witness::Kind::Pinning: return "pinning";
    case Witness::Kind::Monotone: return "monotone";
    case Witness::Kind::ParityMix: return "parity-mix";
    case Witness::Kind::Slack: return "slack";
  }
  return "?";
}

inline json to_json(const Witness& w) {
  json j{{"kind", to_string(w.kind)}, {"lhs", w.lhs}, {"rhs", w.rhs}};
  if (!w.points.empty()) {
    json pts = json::array();
    for (std::size_t p : w.points) pts.push_back(bit_string(p, w.arity));
    j["points"] = pts;
  }
  if (!w.pattern.empty()) j["template"] = w.pattern;
  if (w.position >= 0) j["position"] = w.position + 1;
  return j;
}

inline json to_json(const MembershipReport& r) {
  json verdicts = json::object();
  json witnesses = json::object();
  for (const auto& [name, v] : r.verdicts) {
    verdicts[name] = v.holds;
    if (v.witness) witnesses[name] = to_json(*v.witness);
  }
  return json{{"arity", r.arity}, {"alpha", r.alpha}, {"verdicts", verdicts}, {"witnesses", witnesses}};
}

inline json to_json(const ApproxPlan& p) {
  json params = json::object();
  switch (p.variant) {
    case ApproxPlan::Variant::AntiferroStretch:
    case ApproxPlan::Variant::FerroStretch:
      params = {{"source", p.source}, {"target", p.target}, {"ell", p.ell}, {"t", p.t},
                {"c", p.c}, {"log_c", p.log_c}, {"trivial", p.trivial}};
      break;
    case ApproxPlan::Variant::ConstantDirichlet:
      params = {{"z", p.target}, {"a", p.a}, {"b", p.b}};
      break;
    case ApproxPlan::Variant::ForceOddPower:
      params = {{"j", p.j}, {"lambda", p.source}, {"lambda_prime", p.target}};
      break;
    case ApproxPlan::Variant::DeltaPin:
      params = {{"n", p.j}};
      break;
  }
  return json{{"variant", to_string(p.variant)}, {"eps", p.eps}, {"parameters", params},
              {"achieved_error", p.achieved_error}};
}

}  // namespace cloneforge

#endif
