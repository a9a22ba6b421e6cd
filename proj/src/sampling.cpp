#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cifc/verification.hpp"

namespace cifc {

namespace {

RandomVariableSet binary(std::initializer_list<const char*> names) {
  RandomVariableSet rvs;
  for (const char* n : names) rvs.add(n, 2);
  return rvs;
}

}  // namespace

SamplingScenario rtd_scenario() {
  SamplingScenario s;
  s.name = "rtd";
  s.rvs = binary({"U1c", "U2c", "U1pb", "U2pb", "X1", "X2"});
  s.spec.factors = {
      {{"U1c", "U2c", "U1pb", "U2pb"}, {}, false},
      {{"X1", "X2"}, {"U1c", "U2c", "U1pb", "U2pb"}, false},
  };
  s.table = identity_table();
  return s;
}

SamplingScenario devroye_scenario() {
  SamplingScenario s;
  s.name = "devroye";
  s.rvs = binary({"U2c", "X2", "U1c", "U1pb", "X1"});
  s.spec.factors = {
      {{"U2c", "X2"}, {}, false},
      {{"U1c"}, {"X2"}, false},
      {{"U1pb"}, {"X2"}, false},
      {{"X1"}, {"X2", "U1c", "U1pb"}, true},
  };
  s.table = identity_table();
  return s;
}

SamplingScenario cao_chen_scenario() {
  SamplingScenario s;
  s.name = "cao-chen";
  s.rvs = binary({"U2c", "U11", "U2pb", "U1c", "U1pb", "X2", "X1"});
  s.spec.factors = {
      {{"U2c"}, {}, false},
      {{"U11"}, {"U2c"}, false},
      {{"U2pb"}, {"U2c", "U11"}, false},
      {{"U1c"}, {"U2c", "U11", "U2pb"}, false},
      {{"U1pb"}, {"U2c", "U11", "U2pb", "U1c"}, false},
      {{"X2"}, {"U2c", "U11", "U2pb", "U1c", "U1pb"}, false},
      {{"X1"}, {"U2c", "U11", "U2pb", "U1c", "U1pb", "X2"}, false},
  };
  s.table = identity_table();
  return s;
}

SamplingScenario jiang_scenario() {
  SamplingScenario s;
  s.name = "jiang";
  s.rvs = binary({"U1c", "U2c", "X2", "U1pb", "U2pb", "X1"});
  s.spec.factors = {
      {{"U1c"}, {}, false},
      {{"U2c"}, {}, false},
      {{"X2"}, {"U2c"}, false},
      {{"U1pb", "U2pb"}, {"U1c", "U2c", "X2"}, false},
      {{"X1"}, {"U2c", "U1c", "U1pb", "U2pb", "X2"}, true},
  };
  s.table = identity_table();
  return s;
}

SamplingScenario maric_scenario() {
  SamplingScenario s;
  s.name = "maric";
  s.rvs.add("Q", 1);
  for (const char* n : {"U1c", "U1a", "X2a", "X2b", "X2", "X1"}) s.rvs.add(n, 2);
  s.spec.factors = {
      {{"Q"}, {}, false},
      {{"U1c", "U1a", "X2a", "X2b", "X2", "X1"}, {"Q"}, false},
  };
  s.table = maric_table();
  return s;
}

SamplingScenario scenario_for(SchemaId id) {
  SamplingScenario s;
  switch (id) {
    case SchemaId::RTD: s = rtd_scenario(); break;
    case SchemaId::RTD_IN:
    case SchemaId::DMT_OUT: s = devroye_scenario(); break;
    case SchemaId::CC:
    case SchemaId::CCP:
    case SchemaId::CCP_SPLIT:
    case SchemaId::RTD_CC: s = cao_chen_scenario(); break;
    case SchemaId::JIANG:
    case SchemaId::RTD_JIANG: s = jiang_scenario(); break;
    case SchemaId::MARIC: s = maric_scenario(); break;
  }
  s.table = default_table(id);
  return s;
}

JointDistribution sample_instance(const SamplingScenario& sc, const Channel& channel,
                                  std::uint64_t seed, const SampleOptions& opts) {
  RandomVariableSet rvs;
  for (const auto& n : sc.rvs.names()) {
    const bool constant = std::find(opts.constant.begin(), opts.constant.end(), n) != opts.constant.end();
    rvs.add(n, constant ? 1 : sc.rvs.size_of(n));
  }
  Rng rng(seed);
  FactoredDistribution fd(rvs, sc.spec, rng);
  if (opts.point_mass > 0.0) {
    for (std::size_t f = 0; f < fd.factor_count(); ++f) {
      for (std::size_t c = 0; c < fd.cell_count(f); ++c) {
        if (rng.uniform() >= opts.point_mass) continue;
        auto row = fd.row(f, c);
        std::fill(row.begin(), row.end(), 0.0);
        row[rng.below(row.size())] = 1.0;
      }
    }
  }
  return extend_through_channel(fd.joint(), channel);
}

SampleOptions mixed_sampling(std::size_t i) {
  static constexpr double kLevels[] = {0.0, 0.3, 0.6};
  SampleOptions o;
  o.point_mass = kLevels[i % 3];
  return o;
}

std::optional<Polytope2D> project_or_empty(const LinearSystem& system, FmeOptions opts) {
  try {
    return fme_project(system, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) return std::nullopt;
    throw;
  }
}

GridAgreement grid_agreement(const LinearSystem& system, std::size_t grid, double boundary_tol) {
  if (grid < 2) throw Error(ErrorCode::InvalidParameter, "grid needs at least 2 points per axis");
  GridAgreement g;
  const auto p = project_or_empty(system);
  const MembershipOracle oracle(system);
  g.fme_empty = !p;
  g.oracle_empty = oracle.empty();
  double top = 0.0;
  for (const auto& v : p ? p->vertices : oracle.hull()) top = std::max({top, v.r1, v.r2});
  g.rmax = top > 1e-6 ? 1.1 * top : 1.0;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const RatePoint q{g.rmax * static_cast<double>(i) / static_cast<double>(grid - 1),
                        g.rmax * static_cast<double>(j) / static_cast<double>(grid - 1)};
      ++g.points;
      const bool a = p && p->contains(q);
      const bool b = oracle.contains(q);
      if (a == b) continue;
      if (p && distance_to_boundary(*p, q) <= boundary_tol) {
        ++g.boundary_disagreements;
      } else {
        ++g.disagreements;
      }
    }
  }
  return g;
}

void CheckReport::observe(double violation, double tol, std::uint64_t seed,
                          const std::string& what) {
  const double v = std::isnan(violation) ? std::numeric_limits<double>::infinity()
                                         : std::abs(violation);
  if (v > max_violation) {
    max_violation = v;
    worst_seed = seed;
  }
  if (v > tol) {
    ++failures;
    if (messages.size() < 20) {
      messages.push_back("seed " + std::to_string(seed) + ": " + what + " off by " +
                         std::to_string(violation));
    }
  }
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed(); });
}

const CheckReport& SuiteReport::check(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error(ErrorCode::InvalidParameter, "no check named " + id + " in suite " + suite);
}

std::uint64_t sample_seed(std::uint64_t base, std::size_t i) { return mix_seed(base, i); }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cifc
