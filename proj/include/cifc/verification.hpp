#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cifc/polytope.hpp"

namespace cifc {

/// How input distributions are drawn for a schema: the variables (without Y1, Y2),
/// the factor chain, and the table that carries schema names onto them.
struct SamplingScenario {
  std::string name;
  RandomVariableSet rvs;
  FactorizationSpec spec;
  CorrespondenceTable table;
};

SamplingScenario rtd_scenario();
/// p(U2c,X2) p(U1c|X2) p(U1pb|X2) p(X1|X2,U1c,U1pb) with X1 deterministic.
SamplingScenario devroye_scenario();
/// General chain over U2c, U11, U2pb, U1c, U1pb, X2, X1.
SamplingScenario cao_chen_scenario();
/// p(U1c) p(U2c) p(X2|U2c) p(U1pb,U2pb|U1c,U2c,X2) p(X1|...) with X1 deterministic.
SamplingScenario jiang_scenario();
/// Q constant; U1c, U1a, X2a, X2b, X2, X1 general.
SamplingScenario maric_scenario();
/// Default scenario for evaluating `id` (the table is default_table(id) or identity).
SamplingScenario scenario_for(SchemaId id);

struct SampleOptions {
  /// Probability that a conditional row is replaced by a point mass.
  double point_mass = 0.0;
  /// Variables forced to be constant (cardinality 1).
  std::vector<std::string> constant;
};

/// Sampler used by region-level checks: sample i sharpens rows with probability
/// 0, 0.3 or 0.6 in turn, so that a fair share of projections is nonempty.
SampleOptions mixed_sampling(std::size_t i);

/// Draws the input distribution for `seed` and extends it through the channel.
JointDistribution sample_instance(const SamplingScenario& sc, const Channel& channel,
                                  std::uint64_t seed, const SampleOptions& opts = {});

/// Projection of one schema at one distribution, or nullopt when empty.
std::optional<Polytope2D> project_or_empty(const LinearSystem& system, FmeOptions opts = {});

struct GridAgreement {
  std::size_t points = 0;
  std::size_t disagreements = 0;  // outside the boundary band
  std::size_t boundary_disagreements = 0;
  bool fme_empty = false;
  bool oracle_empty = false;
  double rmax = 0.0;

  bool agrees() const { return disagreements == 0 && fme_empty == oracle_empty; }
};

/// Compares fme_project with the brute-force oracle on a grid x grid lattice over
/// [0, Rmax]^2. Disagreements within `boundary_tol` of the projected boundary are tolerated.
GridAgreement grid_agreement(const LinearSystem& system, std::size_t grid = 21,
                             double boundary_tol = 1e-7);

struct CheckReport {
  std::string id;
  std::size_t seeds_run = 0;
  double max_violation = 0.0;
  std::uint64_t worst_seed = 0;
  std::size_t failures = 0;
  std::map<std::string, double> stats;  // counters and diagnostics, not pass/fail
  std::vector<std::string> messages;

  bool passed() const { return failures == 0; }
  /// Records |v| against the tolerance; keeps the worst seed.
  void observe(double violation, double tol, std::uint64_t seed, const std::string& what = {});
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckReport> checks;

  bool passed() const;
  const CheckReport& check(const std::string& id) const;
};

struct VerifyOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  double tol_mi = 1e-9;
  double tol_region = 1e-7;
  /// Channel for all samples; when unset each sample draws random_channel(sample seed).
  std::optional<Channel> channel;
  unsigned threads = 0;  // 0 means hardware concurrency
};

/// Seed of sample i under base seed s; stable across thread counts.
std::uint64_t sample_seed(std::uint64_t base, std::size_t i);

/// Runs body(i) for i in [0, n) on worker threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Constraint-by-constraint comparison of the restricted unified region and the
/// enlarged Devroye-Mitran-Tarokh region, plus sampled containment.
SuiteReport check_devroye_identities(const VerifyOptions& opts);

/// U11 merging for the Cao-Chen region and the term-by-term match with RTD_CC.
SuiteReport check_cc_reduction(const VerifyOptions& opts);

/// Paired constraints of the Jiang-Xin-Garg region and RTD_JIANG, plus containment.
SuiteReport check_jiang_containment(const VerifyOptions& opts);

/// X2a merging for the Maric region.
SuiteReport check_maric_wlog(const VerifyOptions& opts);

struct ContainmentPair {
  SchemaId outer, inner;
  SamplingScenario scenario;
  CorrespondenceTable outer_table, inner_table;
  std::vector<std::string> outer_zero;  // extra outer rates pinned to 0
};

std::vector<ContainmentPair> proved_containments();

/// Projects both schemas on each sampled distribution and checks inner within outer.
CheckReport sampled_region_containment(const ContainmentPair& pair, const Channel& channel,
                                       std::size_t n_samples, std::uint64_t seed,
                                       double tol = 1e-7, unsigned threads = 0);

/// Runs all three proved containments on random_channel(7).
SuiteReport check_containments(const VerifyOptions& opts);

/// Dropping a constraint under zeroed rates keeps the projection, one check per case.
SuiteReport check_droppability(const VerifyOptions& opts);

struct FrontierPoint {
  double lambda = 0.0;
  RatePoint rate;
  std::uint64_t seed = 0;
};

struct FrontierResult {
  SchemaId schema;
  std::vector<FrontierPoint> best;    // one per lambda
  std::vector<FrontierPoint> pareto;  // non-dominated subset of `best`
  std::size_t evaluations = 0;
};

struct FrontierOptions {
  std::size_t budget = 2000;  // evaluations per lambda
  std::size_t lambdas = 21;
  double step = 0.5;
  /// Independent hill-climbs per lambda; the budget is shared between them.
  std::size_t restarts = 4;
  /// Channel inputs as deterministic functions of the auxiliaries (randomness lives in the
  /// auxiliaries). Applies to factors whose targets are all channel inputs.
  bool deterministic_inputs = true;
  unsigned threads = 0;
};

FrontierResult trace_frontier(SchemaId schema, const Channel& channel, std::uint64_t seed,
                              FrontierOptions opts = {});

/// Largest lambda*R1 + (1-lambda)*R2 over the projection (-inf when empty).
double weighted_rate(const LinearSystem& system, double lambda);

}  // namespace cifc
