#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cifc/io.hpp"

using namespace cifc;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CIFC_TEST_DATA;

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "cifc_test_cli";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(CIFC_CLI) + " " + args + " 2>" + (scratch() / "stderr.txt").string() +
                          " >" + (scratch() / "stdout.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const char* name) { return (kData / name).string(); }

}  // namespace

TEST_CASE("validate") {
  CHECK(run("validate --channel " + data("orthogonal.json")) == 0);
  CHECK(run("validate --dist " + data("square.json")) == 0);
  CHECK(run("validate --channel " + data("malformed.json")) == 2);
  CHECK(run("validate --channel " + data("short_row.json")) == 2);
  CHECK(slurp(scratch() / "stderr.txt").find("short_row.json") != std::string::npos);
  CHECK(run("validate --channel " + data("absent.json")) == 2);
  CHECK(run("validate") == 2);
  CHECK(run("bogus") == 2);
}

TEST_CASE("project the noiseless square") {
  const auto out = scratch() / "square.json";
  REQUIRE(run("project --schema RTD --channel " + data("orthogonal.json") + " --dist " + data("square.json") +
              " --grid 21 --out " + out.string()) == 0);
  const auto p = polytope_from_json(read_json(out));
  CHECK(p.contains({1.0, 1.0}, 1e-6));
  CHECK_FALSE(p.contains({1.01, 1.0}, 1e-6));
  const auto csv = slurp(scratch() / "square.csv");
  CHECK(csv.rfind("r1,r2\n", 0) == 0);
  CHECK(csv.find("1,1\n") != std::string::npos);
  CHECK(run("project --schema NOPE --channel " + data("orthogonal.json") + " --dist " + data("square.json")) == 2);
}

TEST_CASE("verify devroye") {
  const auto out = scratch() / "devroye.json";
  REQUIRE(run("verify --suite devroye --samples 200 --seed 1 --out " + out.string()) == 0);
  const auto j = read_json(out);
  REQUIRE(j.size() == 1u);
  CHECK(j[0]["passed"] == true);
  for (const auto& c : j[0]["checks"]) {
    CAPTURE(c["id"].get<std::string>());
    CHECK(c["max_violation"].get<double>() <= 1e-9);
  }
  CHECK(slurp(scratch() / "stderr.txt").find("FAIL") == std::string::npos);
  CHECK(run("verify --suite nope") == 2);
}

TEST_CASE("identical arguments give identical bytes") {
  const auto a = scratch() / "a.json";
  const auto b = scratch() / "b.json";
  REQUIRE(run("verify --suite cc --samples 30 --seed 4 --out " + a.string()) == 0);
  REQUIRE(run("verify --suite cc --samples 30 --seed 4 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));

  const auto f1 = scratch() / "f1.csv";
  const auto f2 = scratch() / "f2.csv";
  const std::string args = "frontier --schema RTD --channel " + data("orthogonal.json") + " --seed 2 --budget 60 --out ";
  REQUIRE(run(args + f1.string()) == 0);
  REQUIRE(run(args + f2.string()) == 0);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(slurp(f1).rfind("lambda,R1,R2,seed\n", 0) == 0);
}

TEST_CASE("manifest") {
  REQUIRE(run("manifest") == 0);
  const auto j = Json::parse(slurp(scratch() / "stdout.txt"));
  CHECK(j.contains("schemas"));
  CHECK(j.contains("tables"));
}
