#include "doctest.h"

#include <algorithm>
#include <set>

#include "cifc/polytope.hpp"
#include "cifc/verification.hpp"
#include "support.hpp"

using namespace cifc;

namespace {

std::size_t count_sense(const RegionSchema& s, Sense sense) {
  return static_cast<std::size_t>(std::count_if(s.constraints.begin(), s.constraints.end(),
                                                 [&](const auto& c) { return c.sense == sense; }));
}

JointDistribution rtd_sample(std::uint64_t seed) {
  return sample_instance(rtd_scenario(), random_channel(seed), seed);
}

}  // namespace

TEST_CASE("RTD has eleven constraints over eight rates") {
  const auto s = builtin_schema(SchemaId::RTD);
  CHECK(s.constraints.size() == 11u);
  CHECK(s.rate_vars.size() == 8u);
  CHECK(count_sense(s, Sense::GE) == 3u);
  CHECK(count_sense(s, Sense::LE) == 8u);
  const char* labels[] = {"(1a)", "(1b)", "(1c)", "(1d)", "(1e)", "(1f)",
                          "(1g)", "(1h)", "(1i)", "(1j)", "(1k)"};
  for (std::size_t i = 0; i < 11; ++i) CHECK(s.constraints[i].label == labels[i]);
  CHECK(s.r1 == RateCombination{{"R1c", 1}, {"R1pb", 1}});
  CHECK(s.r2 == RateCombination{{"R2c", 1}, {"R2pa", 1}, {"R2pb", 1}});
}

TEST_CASE("CC has a single coefficient-2 constraint") {
  const auto s = builtin_schema(SchemaId::CC);
  std::size_t twos = 0;
  for (const auto& c : s.constraints)
    for (const auto& [r, k] : c.coeffs) twos += (k == 2 && r == "R2");
  CHECK(twos == 1u);
}

TEST_CASE("RTD_JIANG zeroes R2pb and pins R1c'") {
  const auto s = builtin_schema(SchemaId::RTD_JIANG);
  CHECK(s.fixed_zero == std::vector<std::string>{"R2pb"});
  const auto& lo = s.constraint("(us-pin-lo)");
  const auto& hi = s.constraint("(us-pin-hi)");
  CHECK(lo.sense == Sense::GE);
  CHECK(hi.sense == Sense::LE);
  CHECK(lo.rhs.to_string() == hi.rhs.to_string());
  CHECK(lo.coeffs == std::map<std::string, int>{{"R1c'", 1}});
}

TEST_CASE("every schema references only declared variables and projects every message rate") {
  for (auto id : all_schemas()) {
    CAPTURE(to_string(id));
    const auto s = builtin_schema(id);
    std::set<std::string> rates;
    for (const auto& r : s.rate_vars) rates.insert(r.name);
    for (const auto& c : s.constraints) {
      for (const auto& [r, k] : c.coeffs) {
        CHECK(rates.count(r) == 1u);
        CHECK(k != 0);
      }
      for (const auto& t : c.rhs.terms) {
        CHECK(t.term.well_formed());
        for (const auto* set : {&t.term.left, &t.term.right, &t.term.given})
          for (const auto& n : *set) CHECK(s.rvs.contains(n));
      }
    }
    for (const auto& r : s.rate_vars) {
      if (r.role != RateRole::Message) continue;
      const bool zero = std::find(s.fixed_zero.begin(), s.fixed_zero.end(), r.name) != s.fixed_zero.end();
      CHECK((s.r1.count(r.name) + s.r2.count(r.name) == 1u || zero));
    }
  }
}

TEST_CASE("schema names round-trip") {
  for (auto id : all_schemas()) CHECK(schema_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(schema_from_string("NOPE"), Error);
}

TEST_CASE("constraint parser") {
  const auto c = parse_constraint("(x)", "2 R2 + R1 <= I(A,B;C|D) - I(E;F) + 0.5");
  CHECK(c.coeffs == std::map<std::string, int>{{"R1", 1}, {"R2", 2}});
  CHECK(c.sense == Sense::LE);
  REQUIRE(c.rhs.terms.size() == 2u);
  CHECK(c.rhs.terms[0].term.left == NameList{"A", "B"});
  CHECK(c.rhs.terms[0].term.given == NameList{"D"});
  CHECK(c.rhs.terms[1].sign == -1);
  CHECK(c.rhs.constant == doctest::Approx(0.5));
  CHECK(parse_constraint("(y)", "R1c' >= 0").sense == Sense::GE);

  for (const char* bad : {"R1 I(A;B)", "R1 <= I(A B)", "<= I(A;B)", "R1 <= I(A;B) +", "R1 R2 <= 1",
                          "R1 <= I(A;B", "R1 <= I(;B)"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(parse_constraint("(z)", bad), Error);
  }
}

TEST_CASE("RTD right-hand sides are nonnegative") {
  const auto s = builtin_schema(SchemaId::RTD);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto sys = instantiate(s, rtd_sample(seed));
    for (const auto& r : sys.rows) CHECK(r.rhs >= -1e-9);
  }
}

TEST_CASE("(1a) evaluates to I(U1c;X2|U2c)") {
  const auto s = builtin_schema(SchemaId::RTD);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = rtd_sample(seed);
    const auto sys = instantiate(s, d);
    CHECK(sys.rows[0].rhs == doctest::Approx(testing::oracle_cmi(d, {"U1c"}, {"X2"}, {"U2c"})).epsilon(1e-9));
    // (1h): I(Y2;U2pb|U1c,X2,U2c)
    CHECK(sys.rows[7].rhs ==
          doctest::Approx(testing::oracle_cmi(d, {"Y2"}, {"U2pb"}, {"U1c", "X2", "U2c"})).epsilon(1e-9));
  }
}

TEST_CASE("fully degenerate distribution gives zero right-hand sides") {
  const auto d = extend_through_channel(testing::all_constant_inputs(), orthogonal_noiseless());
  const auto sys = instantiate(builtin_schema(SchemaId::RTD), d);
  for (const auto& r : sys.rows) CHECK(r.rhs == 0.0);
  const auto p = fme_project(sys);
  REQUIRE(p.vertices.size() == 1u);
  CHECK(p.vertices[0].r1 == 0.0);
  CHECK(p.vertices[0].r2 == 0.0);
}

TEST_CASE("noiseless square assignment admits (1,1)") {
  const auto d = extend_through_channel(testing::noiseless_square_inputs(), orthogonal_noiseless());
  const auto sys = instantiate(builtin_schema(SchemaId::RTD), d);
  CHECK(membership_oracle(sys, {1.0, 1.0}));
  CHECK_FALSE(membership_oracle(sys, {1.01, 1.0}));
}

TEST_CASE("factorization is enforced") {
  const auto in = sample_instance(cao_chen_scenario(), random_channel(1), 1);
  CHECK_THROWS_AS(instantiate(builtin_schema(SchemaId::RTD_IN), marginalize(in, {"U2c", "X2", "U1c", "U1pb", "X1", "Y1", "Y2"})),
                  Error);
  try {
    instantiate(builtin_schema(SchemaId::RTD_IN),
                marginalize(in, {"U2c", "X2", "U1c", "U1pb", "X1", "Y1", "Y2"}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FactorizationViolation);
  }
}

TEST_CASE("droppable constraints under zeroed rates") {
  const auto s = builtin_schema(SchemaId::RTD);
  using L = std::vector<std::string>;
  CHECK(droppable_constraints(s, {}) == L{});
  const auto d1 = droppable_constraints(s, {"R2c", "R2pa", "R2pb", "R2pb'"});
  CHECK(std::count(d1.begin(), d1.end(), "(1d)") == 1);
  const auto d3 = droppable_constraints(s, {"R2pb", "R2pb'"});
  CHECK(d3 == L{"(1g)"});
  CHECK(droppable_constraints(s, {"R1c", "R1c'", "R1pb", "R1pb'"}) == L{"(1i)"});
  CHECK(droppable_constraints(s, {"R2pa", "R2pb", "R2pb'"}) == L{"(1e)", "(1g)"});
  CHECK_THROWS_AS(droppable_constraints(builtin_schema(SchemaId::CC), {}), Error);
}

TEST_CASE("correspondence tables") {
  const auto t = cao_chen_table();
  CHECK(t.map_rvs({"V11"}) == NameList{"U2pb"});
  CHECK(t.map_rate("R1") == "R2");
  CHECK(cao_chen_merged_table().map_rvs({"V11p"}) == NameList{"U11", "U2pb"});
  CHECK(jiang_table().map_rvs({"W1", "W2"}) == NameList{"U1pb", "U2pb"});
  CHECK(jiang_table().map_rate("R22'") == "R1pb'");
  CHECK(maric_merged_table().map_rvs({"X2a"}).empty());
  CHECK(identity_table().map_rvs({"B", "A", "A"}) == NameList{"A", "B"});
}

TEST_CASE("linear system helpers") {
  auto sys = instantiate(builtin_schema(SchemaId::RTD), rtd_sample(3));
  sys.fix_zero("R2pa");
  CHECK(sys.zero[sys.var_index("R2pa")]);
  sys.drop("(1k)");
  CHECK(sys.rows.size() == 10u);
  CHECK_THROWS_AS(sys.drop("(1k)"), Error);
  CHECK_THROWS_AS(sys.var_index("R9"), Error);
}
