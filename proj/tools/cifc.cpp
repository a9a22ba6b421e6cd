#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cifc/io.hpp"

namespace {

using namespace cifc;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Args {
  std::string channel, dist, schema = "RTD", suite = "all", out;
  std::size_t samples = 200, budget = 2000, grid = 0;
  std::uint64_t seed = 1;
  double tol_mi = 1e-9, tol_region = 1e-7;
};

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
}

Channel load_channel(const std::string& path) {
  try {
    return channel_from_json(read_json(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

JointDistribution load_dist(const std::string& path) {
  try {
    return distribution_from_json(read_json(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

int run_validate(const Args& a) {
  if (a.channel.empty() && a.dist.empty()) {
    throw Error(ErrorCode::InvalidParameter, "validate needs --channel and/or --dist");
  }
  if (!a.channel.empty()) load_channel(a.channel);
  if (!a.dist.empty()) load_dist(a.dist);
  std::cout << "ok\n";
  return kOk;
}

int run_project(const Args& a) {
  const auto schema = builtin_schema(schema_from_string(a.schema));
  const auto channel = load_channel(a.channel);
  auto d = load_dist(a.dist);
  if (!d.rvs().contains("Y1") && !d.rvs().contains("Y2")) d = extend_through_channel(d, channel);
  const auto system = instantiate(schema, d, default_table(schema.id));

  int code = kOk;
  if (a.grid > 0) {
    const auto g = grid_agreement(system, a.grid, a.tol_region);
    std::cerr << "grid " << a.grid << "x" << a.grid << ": " << g.disagreements << " disagreements, "
              << g.boundary_disagreements << " on the boundary\n";
    if (!g.agrees()) code = kViolation;
  }

  const auto p = project_or_empty(system);
  if (!p) std::cerr << "region is empty for this distribution\n";
  const Polytope2D poly = p.value_or(Polytope2D{});
  emit(a, polytope_to_json(poly).dump(2) + "\n");
  if (!a.out.empty()) {
    auto csv = std::filesystem::path(a.out).replace_extension(".csv");
    write_text(csv, polytope_csv(poly));
  }
  return code;
}

int run_frontier(const Args& a) {
  FrontierOptions opts;
  opts.budget = a.budget;
  const auto f = trace_frontier(schema_from_string(a.schema), load_channel(a.channel), a.seed, opts);
  emit(a, frontier_csv(f));
  return kOk;
}

int run_verify(const Args& a) {
  VerifyOptions opts;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.tol_mi = a.tol_mi;
  opts.tol_region = a.tol_region;
  if (!a.channel.empty()) opts.channel = load_channel(a.channel);

  std::vector<SuiteReport> reports;
  const bool all = a.suite == "all";
  if (all || a.suite == "devroye") reports.push_back(check_devroye_identities(opts));
  if (all || a.suite == "cc") reports.push_back(check_cc_reduction(opts));
  if (all || a.suite == "jiang") reports.push_back(check_jiang_containment(opts));
  if (all || a.suite == "maric") reports.push_back(check_maric_wlog(opts));
  if (all || a.suite == "containment") reports.push_back(check_containments(opts));
  if (a.suite == "droppability") reports.push_back(check_droppability(opts));

  Json out = Json::array();
  bool passed = true;
  for (const auto& r : reports) {
    out.push_back(report_to_json(r));
    passed = passed && r.passed();
    for (const auto& c : r.checks) {
      std::cerr << (c.passed() ? "PASS " : "FAIL ") << r.suite << ": " << c.id << " (max "
                << format_number(c.max_violation) << ", seeds " << c.seeds_run << ")\n";
    }
  }
  emit(a, out.dump(2) + "\n");
  return passed ? kOk : kViolation;
}

int run_manifest(const Args& a) {
  emit(a, schema_manifest().dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions of the cognitive interference channel: projection, frontiers, checks"};
  app.require_subcommand(1);
  Args a;

  auto* validate = app.add_subcommand("validate", "Check a channel and/or distribution file");
  validate->add_option("--channel", a.channel, "Channel JSON")->check(CLI::ExistingFile);
  validate->add_option("--dist", a.dist, "Distribution JSON")->check(CLI::ExistingFile);

  auto* project = app.add_subcommand("project", "Project a schema at one distribution");
  project->add_option("--schema", a.schema, "Schema id")->capture_default_str();
  project->add_option("--channel", a.channel, "Channel JSON")->required()->check(CLI::ExistingFile);
  project->add_option("--dist", a.dist, "Input distribution JSON (Y1, Y2 appended when absent)")
      ->required()
      ->check(CLI::ExistingFile);
  project->add_option("--out", a.out, "Polytope JSON path; a .csv vertex dump is written next to it");
  project->add_option("--grid", a.grid, "Also cross-check against the oracle on a grid x grid lattice");
  project->add_option("--tol-region", a.tol_region, "Boundary band for the grid check")
      ->capture_default_str();

  auto* frontier = app.add_subcommand("frontier", "Trace the Pareto frontier over input distributions");
  frontier->add_option("--schema", a.schema, "Schema id")->capture_default_str();
  frontier->add_option("--channel", a.channel, "Channel JSON")->required()->check(CLI::ExistingFile);
  frontier->add_option("--seed", a.seed, "Seed")->capture_default_str();
  frontier->add_option("--budget", a.budget, "Evaluations per lambda")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  frontier->add_option("--out", a.out, "CSV path (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "Run a check suite and write a JSON report");
  verify->add_option("--suite", a.suite, "Suite")
      ->capture_default_str()
      ->check(CLI::IsMember({"devroye", "cc", "jiang", "maric", "containment", "droppability", "all"}));
  verify->add_option("--samples", a.samples, "Samples per identity check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", a.seed, "Base seed")->capture_default_str();
  verify->add_option("--channel", a.channel, "Fixed channel (default: a random channel per sample)")
      ->check(CLI::ExistingFile);
  verify->add_option("--tol-mi", a.tol_mi, "Tolerance for information identities")->capture_default_str();
  verify->add_option("--tol-region", a.tol_region, "Tolerance for region containment")
      ->capture_default_str();
  verify->add_option("--out", a.out, "Report path (stdout when omitted)");

  auto* manifest = app.add_subcommand("manifest", "Dump every schema with its constraint labels");
  manifest->add_option("--out", a.out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*validate) return run_validate(a);
    if (*project) return run_project(a);
    if (*frontier) return run_frontier(a);
    if (*verify) return run_verify(a);
    if (*manifest) return run_manifest(a);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool violation = e.code() == ErrorCode::Unbounded ||
                           e.code() == ErrorCode::IdentityViolation ||
                           e.code() == ErrorCode::ContainmentViolation;
    return violation ? kViolation : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
