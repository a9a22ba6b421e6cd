#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cifc/io.hpp"

using namespace cifc;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NotApplicable;
}

}  // namespace

TEST_CASE("channel round-trip") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto c = random_channel(seed);
    CHECK(channel_from_json(channel_to_json(c)) == c);
    CHECK(channel_from_json(Json::parse(channel_to_json(c).dump())) == c);
  }
}

TEST_CASE("channel parsing rejects bad input") {
  auto j = channel_to_json(orthogonal_noiseless());
  auto short_p = j;
  short_p["p"].erase(short_p["p"].begin());
  CHECK(code_of([&] { channel_from_json(short_p); }) == ErrorCode::InvalidParameter);

  auto neg = j;
  neg["p"][0] = -1.0;
  neg["p"][1] = 2.0;
  CHECK(code_of([&] { channel_from_json(neg); }) == ErrorCode::NegativeProbability);

  auto missing = j;
  missing.erase("y2");
  CHECK(code_of([&] { channel_from_json(missing); }) == ErrorCode::ParseError);

  auto wrong_type = j;
  wrong_type["p"] = "none";
  CHECK(code_of([&] { channel_from_json(wrong_type); }) == ErrorCode::ParseError);
}

TEST_CASE("distribution round-trip and length mismatch") {
  RandomVariableSet rvs({"A", "B"}, {2, 3});
  JointDistribution d(rvs, {0.1, 0.2, 0.3, 0.1, 0.2, 0.1});
  const auto back = distribution_from_json(distribution_to_json(d));
  CHECK(back.rvs().names() == d.rvs().names());
  CHECK(back.rvs().sizes() == d.rvs().sizes());
  CHECK(back.p() == d.p());

  auto j = distribution_to_json(d);
  j["p"].push_back(0.0);
  CHECK_THROWS_AS(distribution_from_json(j), Error);
  auto k = distribution_to_json(d);
  k["sizes"].push_back(2);
  CHECK(code_of([&] { distribution_from_json(k); }) == ErrorCode::ParseError);
}

TEST_CASE("polytope JSON and CSV") {
  Polytope2D p;
  p.vertices = {{0, 0}, {1.0 / 3.0, 0}, {0, 2.0 / 3.0}};
  p.halfplanes = {{-1, 0, 0}, {0, -1, 0}, {1, 0.5, 1.0 / 3.0}};
  const auto back = polytope_from_json(polytope_to_json(p));
  CHECK(back.vertices == p.vertices);
  REQUIRE(back.halfplanes.size() == 3u);
  CHECK(back.halfplanes[2].b == p.halfplanes[2].b);

  const auto csv = polytope_csv(p);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r1,r2");
  std::getline(in, line);
  CHECK(line == "0,0");
  std::getline(in, line);
  CHECK(line == "0.333333333333,0");
  std::getline(in, line);
  CHECK(line == "0,0.666666666667");
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("numbers use twelve significant digits") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(format_number(1e-15) == "1e-15");
}

TEST_CASE("report fields") {
  CheckReport r;
  r.id = "x";
  r.seeds_run = 3;
  r.observe(5e-6, 1e-9, 17, "gap");
  r.stats["nonempty"] = 2;
  const auto j = report_to_json(r);
  for (const char* k : {"id", "seeds_run", "max_violation", "worst_seed", "failures", "passed", "stats", "messages"})
    CHECK(j.contains(k));
  CHECK(j["passed"] == false);
  CHECK(j["worst_seed"] == 17);
  CHECK(j["stats"]["nonempty"] == 2.0);

  CheckReport inf;
  inf.observe(std::numeric_limits<double>::infinity(), 1e-9, 1);
  CHECK(report_to_json(inf)["max_violation"] == "inf");

  SuiteReport s{"demo", {r}};
  const auto sj = report_to_json(s);
  CHECK(sj["suite"] == "demo");
  CHECK(sj["passed"] == false);
  CHECK(sj["checks"].size() == 1u);
}

TEST_CASE("frontier CSV") {
  FrontierResult f;
  f.schema = SchemaId::RTD;
  f.pareto = {{0.0, {0, 1}, 5}, {1.0, {1, 0.5}, 6}};
  CHECK(frontier_csv(f) == "lambda,R1,R2,seed\n0,0,1,5\n1,1,0.5,6\n");
}

TEST_CASE("manifest lists every schema with RTD labels") {
  const auto m = schema_manifest();
  std::set<std::string> ids;
  for (const auto& s : m["schemas"]) ids.insert(s["id"].get<std::string>());
  for (auto id : all_schemas()) CHECK(ids.count(to_string(id)) == 1u);
  CHECK(m["tables"].size() == 5u);
  for (const auto& s : m["schemas"]) {
    if (s["id"] != "RTD") continue;
    REQUIRE(s["constraints"].size() == 11u);
    const char* labels[] = {"(1a)", "(1b)", "(1c)", "(1d)", "(1e)", "(1f)",
                            "(1g)", "(1h)", "(1i)", "(1j)", "(1k)"};
    for (std::size_t i = 0; i < 11; ++i) CHECK(s["constraints"][i]["label"] == labels[i]);
  }
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "cifc_test_io";
  std::filesystem::create_directories(dir);
  write_text(dir / "c.json", channel_to_json(bsc_pair(0.1, 0.1)).dump());
  CHECK(channel_from_json(read_json(dir / "c.json")) == bsc_pair(0.1, 0.1));
  write_text(dir / "bad.json", "{ not json");
  try {
    read_json(dir / "bad.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json(dir / "absent.json"), Error);
  std::filesystem::remove_all(dir);
}
