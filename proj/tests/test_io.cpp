#include <gtest/gtest.h>

#include "cloneforge/families.hpp"
#include "cloneforge/io.hpp"

using namespace cloneforge;

TEST(Json, FunctionRoundTrip) {
  const FunctionTable f(2, {0.1, 1.0 / 3.0, 2.5, 0.0});
  const json j = to_json(f);
  EXPECT_EQ(function_from_json(json::parse(j.dump())), f);
  EXPECT_EQ(function_from_json(json::parse(R"({"symmetric": [1, 0, 1]})")), eq2());
  EXPECT_TRUE(function_from_json(json::parse(R"({"arity": 1, "values": [1, -1], "signed": true})")).is_signed());
}

TEST(Json, FunctionErrors) {
  EXPECT_THROW(function_from_json(json::parse(R"({"values": [1, 2]})")), SchemaError);
  EXPECT_THROW(function_from_json(json::parse(R"({"arity": "1", "values": [1, 2]})")), SchemaError);
  EXPECT_THROW(function_from_json(json::parse(R"({"arity": 1, "values": [1, "x"]})")), SchemaError);
  EXPECT_THROW(function_from_json(json::parse(R"({"arity": 1, "values": [1, -1]})")), PreconditionError);
  EXPECT_THROW(function_from_json(json::parse("[1, 2]")), SchemaError);
}

TEST(Json, NamedFamilies) {
  EXPECT_EQ(named_function("eq"), eq2());
  EXPECT_EQ(named_function("hising:4:0.25"), hising(4, 0.25));
  EXPECT_EQ(named_function("forceodd:2"), force_odd(2));
  EXPECT_THROW(named_function("hising:x:0.5"), SchemaError);
  EXPECT_THROW(named_function("nope"), SchemaError);
}

TEST(Json, FormulaArgumentsAreOneBased) {
  const json j = json::parse(R"({"free": 2, "bound": 0, "atoms": [{"fn": "eq", "args": [2, 1]}]})");
  const PpsFormula phi = formula_from_json(j);
  EXPECT_EQ(phi.atoms[0].args, (std::vector<int>{1, 0}));
  EXPECT_EQ(to_json(phi)["atoms"][0]["args"], json::parse("[2, 1]"));
  EXPECT_THROW(formula_from_json(json::parse(R"({"free": 1, "bound": 0, "atoms": [{"fn": "eq", "args": [1, 2]}]})")),
               PreconditionError);
}

TEST(Json, CircuitRoundTrip) {
  const Circuit c = gadget_match_ising_half();
  const Circuit d = circuit_from_json(json::parse(to_json(c).dump()));
  EXPECT_EQ(implemented_function(d), implemented_function(c));
  EXPECT_THROW(circuit_from_json(json::parse(R"({"kind": "odd", "externals": [], "internals": [], "edges": []})")),
               SchemaError);
  EXPECT_THROW(circuit_from_json(json::parse(R"({"kind": "match", "externals": [0], "internals": [1], "edges": [[0, 1]]})")),
               SchemaError);
}

TEST(Json, ReportWitnessesUseBitStrings) {
  const json r = to_json(classify(FunctionTable(3, {6, 4, 5, 5, 5, 5, 4, 6})));
  EXPECT_EQ(r["verdicts"]["SD"], true);
  EXPECT_EQ(r["verdicts"]["LSM"], false);
  EXPECT_EQ(r["witnesses"]["LSM-2-pinnings"]["template"], "xy0");  // first failing template in scan order
  EXPECT_TRUE(r["witnesses"]["LSM"]["points"][0].is_string());
}

TEST(Json, DoublesRoundTrip) {
  const double x = 0.1 + 0.2;
  const json j = json::parse(json(x).dump());
  EXPECT_EQ(j.get<double>(), x);
}
