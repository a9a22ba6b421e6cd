#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "cifc/polytope.hpp"
#include "cifc/verification.hpp"
#include "support.hpp"

using namespace cifc;

namespace {

struct Row {
  std::vector<std::int64_t> a;
  Sense sense;
  double b;
};

LinearSystem make_system(std::vector<std::string> vars, const std::vector<Row>& rows,
                         std::vector<std::int64_t> r1, std::vector<std::int64_t> r2) {
  LinearSystem s;
  s.vars = std::move(vars);
  s.zero.assign(s.vars.size(), false);
  s.r1 = std::move(r1);
  s.r2 = std::move(r2);
  int k = 0;
  for (const auto& r : rows) s.rows.push_back({"(r" + std::to_string(k++) + ")", r.a, r.sense, r.b});
  return s;
}

Polytope2D box(double a, double b) {
  return fme_project(make_system({"R1", "R2"}, {{{1, 0}, Sense::LE, a}, {{0, 1}, Sense::LE, b}}, {1, 0}, {0, 1}));
}

Polytope2D triangle(double c) {
  return fme_project(make_system({"R1", "R2"}, {{{1, 1}, Sense::LE, c}}, {1, 0}, {0, 1}));
}

ErrorCode code_of(const LinearSystem& s) {
  try {
    fme_project(s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

LinearSystem rtd_instance(std::uint64_t seed) {
  return instantiate(builtin_schema(SchemaId::RTD),
                     sample_instance(rtd_scenario(), random_channel(seed), seed, mixed_sampling(seed)));
}

// Two message rates and two binning rates: LE rows with 0/1 coefficients, GE rows on binning only.
LinearSystem random_system(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> hi(0.2, 2.0), lo(0.0, 0.5);
  std::bernoulli_distribution coin(0.5);
  std::vector<Row> rows;
  for (int k = 0; k < 5; ++k) {
    std::vector<std::int64_t> a(4);
    for (auto& c : a) c = coin(rng) ? 1 : 0;
    a[static_cast<std::size_t>(k % 2)] = 1;
    rows.push_back({a, Sense::LE, hi(rng)});
  }
  rows.push_back({{0, 0, 1, 0}, Sense::GE, lo(rng)});
  rows.push_back({{0, 0, 1, 1}, Sense::GE, lo(rng)});
  return make_system({"M1", "M2", "B1", "B2"}, rows, {1, 0, 0, 0}, {0, 1, 0, 0});
}

bool has_vertex(const Polytope2D& p, RatePoint q, double tol) {
  return std::any_of(p.vertices.begin(), p.vertices.end(), [&](const RatePoint& v) {
    return std::abs(v.r1 - q.r1) <= tol && std::abs(v.r2 - q.r2) <= tol;
  });
}

}  // namespace

TEST_CASE("segment from a binning sum") {
  // R1pb + R1pb' <= 1, R1pb' >= 0, R1 = R1pb, R2 = 0.
  const auto s = make_system({"R1pb", "R1pb'"}, {{{1, 1}, Sense::LE, 1.0}, {{0, 1}, Sense::GE, 0.0}}, {1, 0}, {0, 0});
  const auto p = fme_project(s);
  REQUIRE(p.vertices.size() == 2u);
  CHECK(has_vertex(p, {0, 0}, 1e-12));
  CHECK(has_vertex(p, {1, 0}, 1e-12));
  CHECK(p.contains({0.5, 0.0}));
  CHECK_FALSE(p.contains({0.5, 0.01}));
}

TEST_CASE("all-zero right-hand sides give the origin") {
  const auto d = extend_through_channel(testing::all_constant_inputs(), orthogonal_noiseless());
  const auto p = fme_project(instantiate(builtin_schema(SchemaId::RTD), d));
  REQUIRE(p.vertices.size() == 1u);
  CHECK(p.vertices[0] == RatePoint{0, 0});
}

TEST_CASE("noiseless square") {
  const auto d = extend_through_channel(testing::noiseless_square_inputs(), orthogonal_noiseless());
  const auto sys = instantiate(builtin_schema(SchemaId::RTD), d);
  const auto p = fme_project(sys);
  REQUIRE(p.vertices.size() == 4u);
  for (RatePoint q : {RatePoint{0, 0}, RatePoint{1, 0}, RatePoint{1, 1}, RatePoint{0, 1}})
    CHECK(has_vertex(p, q, 1e-9));
  const auto g = grid_agreement(sys, 21);
  CHECK(g.points == 441u);
  CHECK(g.disagreements == 0u);
}

TEST_CASE("oracle on a box") {
  const auto s = make_system({"R1", "R2"}, {{{1, 0}, Sense::LE, 1.0}, {{0, 1}, Sense::LE, 1.0}}, {1, 0}, {0, 1});
  CHECK(membership_oracle(s, {0, 0}));
  CHECK(membership_oracle(s, {1, 1}));
  CHECK_FALSE(membership_oracle(s, {2, 0}));
  CHECK_FALSE(membership_oracle(s, {-0.1, 0}));
  const MembershipOracle o(s);
  CHECK(o.hull().size() == 4u);
  CHECK(o.full_vertex_count() == 4u);
}

TEST_CASE("containment between simple polytopes") {
  const auto sq = box(1, 1);
  const auto tri = triangle(1);
  CHECK(polytope_contains(sq, tri, 1e-9));
  CHECK_FALSE(polytope_contains(tri, sq, 1e-9));
  CHECK(containment_margin(tri, sq) == doctest::Approx(1.0));
  CHECK(containment_margin(sq, tri) <= 0.0);
  CHECK(same_vertices(sq, box(1, 1 + 1e-12), 1e-9));
  CHECK_FALSE(same_vertices(sq, tri, 1e-9));
  CHECK(distance_to_boundary(sq, {0.5, 0.9}) == doctest::Approx(0.1));
  CHECK(sq.support(1, 1) == doctest::Approx(2.0));
  CHECK(tri.support(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("empty regions in containment") {
  const Polytope2D empty;
  CHECK(containment_margin(box(1, 1), empty) == 0.0);
  CHECK(std::isinf(containment_margin(empty, box(1, 1))));
}

TEST_CASE("unbounded and infeasible systems") {
  CHECK(code_of(make_system({"A"}, {{{1}, Sense::GE, 0.0}}, {1}, {0})) == ErrorCode::Unbounded);
  CHECK(code_of(make_system({"A", "B"}, {{{1, 0}, Sense::LE, 1.0}}, {1}, {0, 1})) == ErrorCode::Unbounded);
  CHECK(code_of(make_system({"A"}, {{{1}, Sense::LE, -1.0}}, {1}, {0})) == ErrorCode::Infeasible);
  CHECK(code_of(make_system({"A", "B"}, {{{1, 1}, Sense::LE, 1.0}, {{0, 1}, Sense::GE, 2.0}}, {1, 0}, {0, 0})) ==
        ErrorCode::Infeasible);
  const MembershipOracle o(make_system({"A"}, {{{1}, Sense::LE, -1.0}}, {1}, {0}));
  CHECK(o.empty());
}

TEST_CASE("pinned variables are eliminated as zero") {
  auto s = make_system({"R1", "R2"}, {{{1, 0}, Sense::LE, 1.0}, {{0, 1}, Sense::LE, 1.0}}, {1, 0}, {0, 1});
  s.fix_zero("R2");
  const auto p = fme_project(s);
  CHECK(p.support(0, 1) == doctest::Approx(0.0));
  CHECK(p.support(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("projected polytopes are normalized, tight and counterclockwise") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto p = project_or_empty(random_system(seed));
    if (!p || p->vertices.size() < 3) continue;
    ++checked;
    for (const auto& h : p->halfplanes) {
      CHECK(std::max(std::abs(h.a1), std::abs(h.a2)) == doctest::Approx(1.0));
      const bool tight = std::any_of(p->vertices.begin(), p->vertices.end(),
                                     [&](const RatePoint& v) { return std::abs(h.slack(v)) <= 1e-7; });
      CHECK(tight);
      for (const auto& v : p->vertices) CHECK(h.slack(v) >= -1e-9);
    }
    const auto& v = p->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      const auto& c = v[(i + 2) % v.size()];
      CHECK((b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1) > 0.0);
    }
  }
  CHECK(checked >= 30u);
}

TEST_CASE("loosening every constraint grows the region") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto sys = seed % 2 ? random_system(seed) : rtd_instance(seed);
    const auto before = project_or_empty(sys);
    if (!before) continue;
    for (auto& r : sys.rows) r.rhs += (r.sense == Sense::LE ? 0.1 : -0.1);
    const auto after = fme_project(sys);
    CHECK(containment_margin(after, *before) <= 1e-9);
    CHECK(after.support(1, 1) >= before->support(1, 1) - 1e-12);
  }
}

TEST_CASE("regions with binning-only lower bounds are downward closed") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto p = project_or_empty(seed % 2 ? random_system(seed) : rtd_instance(seed));
    if (!p) continue;
    for (const auto& v : p->vertices)
      for (double s1 : {0.0, 0.4, 1.0})
        for (double s2 : {0.0, 0.7, 1.0}) CHECK(p->contains({s1 * v.r1, s2 * v.r2}, 1e-9));
  }
}

TEST_CASE("FME agrees with the oracle on random structured systems") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CAPTURE(seed);
    const auto sys = random_system(seed);
    const auto g = grid_agreement(sys, 21);
    CHECK(g.agrees());
    const auto p = project_or_empty(sys);
    const MembershipOracle o(sys);
    REQUIRE(p.has_value() != o.empty());
    if (!p) continue;
    // The oracle hull may keep collinear points; compare the point sets both ways.
    for (const auto& v : o.hull()) CHECK(p->contains(v, 1e-9));
    for (const auto& v : p->vertices) CHECK(o.contains(v, 1e-9));
  }
}

TEST_CASE("FME agrees with the oracle on a grid") {
  for (auto id : {SchemaId::RTD, SchemaId::CC, SchemaId::JIANG}) {
    const auto sc = scenario_for(id);
    const auto schema = builtin_schema(id);
    for (std::uint64_t i = 0; i < 6; ++i) {
      CAPTURE(to_string(id));
      CAPTURE(i);
      const auto d = sample_instance(sc, random_channel(100 + i), sample_seed(3, i), mixed_sampling(i));
      const auto g = grid_agreement(instantiate(schema, d, sc.table), 11);
      CHECK(g.agrees());
      CHECK(g.fme_empty == g.oracle_empty);
    }
  }
}
