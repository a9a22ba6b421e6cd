#include "doctest.h"

#include <cmath>

#include "cifc/channel.hpp"

using namespace cifc;

TEST_CASE("orthogonal noiseless is a 0/1 tensor with Y1 = X1, Y2 = X2") {
  const auto c = orthogonal_noiseless();
  for (double v : c.tensor()) CHECK((v == 0.0 || v == 1.0));
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2) CHECK(c(x1, x2, x1, x2) == 1.0);
  CHECK_FALSE(validate_channel(c).has_value());
}

TEST_CASE("bsc_pair") {
  CHECK(bsc_pair(0.0, 0.0) == orthogonal_noiseless());
  const auto c = bsc_pair(0.1, 0.2);
  // Y1 flips with 0.1 and Y2 with 0.2, independently.
  CHECK(c(1, 0, 0, 0) == doctest::Approx(0.1 * 0.8));
  CHECK(c(1, 1, 0, 0) == doctest::Approx(0.1 * 0.2));
  CHECK(c(0, 1, 0, 1) == doctest::Approx(0.9 * 0.8));
  CHECK_THROWS_AS(bsc_pair(-0.1, 0.0), Error);
  CHECK_THROWS_AS(bsc_pair(0.0, 0.6), Error);
}

TEST_CASE("random channels validate and are reproducible") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto c = random_channel(seed);
    REQUIRE_FALSE(validate_channel(c).has_value());
  }
  CHECK(random_channel(42) == random_channel(42));
  CHECK_FALSE(random_channel(42) == random_channel(43));
  CHECK(random_channel(5, 3).tensor().size() == 81u);
}

TEST_CASE("validation names the defect") {
  std::vector<double> p(16, 0.25);
  CHECK_FALSE(validate_channel(2, 2, 2, 2, p).has_value());

  auto neg = p;
  neg[orthogonal_noiseless().index(1, 0, 1, 0)] = -0.25;
  const auto d1 = validate_channel(2, 2, 2, 2, neg);
  REQUIRE(d1.has_value());
  CHECK(d1->code == ErrorCode::NegativeProbability);
  CHECK(d1->x1 == 1);
  CHECK(d1->x2 == 0);

  auto heavy = p;
  heavy[orthogonal_noiseless().index(0, 0, 0, 1)] += 0.125;
  const auto d2 = validate_channel(2, 2, 2, 2, heavy);
  REQUIRE(d2.has_value());
  CHECK(d2->code == ErrorCode::RowSumMismatch);
  CHECK(d2->x1 == 0);
  CHECK(d2->x2 == 1);
  CHECK(d2->residual == doctest::Approx(0.125));

  CHECK(validate_channel(2, 2, 2, 2, std::vector<double>(15, 0.25))->code == ErrorCode::InvalidParameter);
  CHECK(validate_channel(9, 2, 2, 2, std::vector<double>(9 * 8, 0.25))->code == ErrorCode::InvalidParameter);
}

TEST_CASE("a tiny row-sum residual is accepted, a larger one is not") {
  std::vector<double> p(16, 0.25);
  p[0] += 1e-13;
  CHECK_FALSE(validate_channel(2, 2, 2, 2, p).has_value());
  p[0] += 1e-11;
  CHECK(validate_channel(2, 2, 2, 2, p).has_value());
}

TEST_CASE("constructor throws the defect code") {
  std::vector<double> p(16, 0.25);
  p[3] = -0.25;
  try {
    Channel c({"X1", 2}, {"X2", 2}, {"Y1", 2}, {"Y2", 2}, p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeProbability);
  }
}
