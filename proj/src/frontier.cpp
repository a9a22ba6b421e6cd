#include <algorithm>
#include <cmath>
#include <limits>

#include "cifc/verification.hpp"

namespace cifc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Scored {
  double value = kNegInf;
  RatePoint best;
};

Scored score(const RegionSchema& schema, const SamplingScenario& sc, const Channel& channel,
             const FactoredDistribution& fd, double lambda) {
  const auto d = extend_through_channel(fd.joint(), channel);
  const auto p = project_or_empty(instantiate(schema, d, sc.table));
  Scored s;
  if (!p) return s;
  for (const auto& v : p->vertices) {
    const double w = lambda * v.r1 + (1.0 - lambda) * v.r2;
    if (w > s.value) {
      s.value = w;
      s.best = v;
    }
  }
  return s;
}

}  // namespace

double weighted_rate(const LinearSystem& system, double lambda) {
  const auto p = project_or_empty(system);
  return p ? p->support(lambda, 1.0 - lambda) : kNegInf;
}

FrontierResult trace_frontier(SchemaId id, const Channel& channel, std::uint64_t seed,
                              FrontierOptions opts) {
  if (opts.lambdas < 2 || opts.budget == 0) {
    throw Error(ErrorCode::InvalidParameter, "frontier needs at least 2 lambdas and budget >= 1");
  }
  const auto schema = builtin_schema(id);
  auto sc = scenario_for(id);
  if (opts.deterministic_inputs) {
    for (auto& f : sc.spec.factors) {
      const bool inputs_only = std::all_of(f.targets.begin(), f.targets.end(),
                                           [](const std::string& t) { return t == "X1" || t == "X2"; });
      if (inputs_only) f.deterministic = true;
    }
  }
  const std::size_t restarts = std::max<std::size_t>(1, std::min(opts.restarts, opts.budget));

  FrontierResult out;
  out.schema = id;
  out.best.resize(opts.lambdas);
  std::vector<bool> found(opts.lambdas, false);
  parallel_for(opts.lambdas, opts.threads, [&](std::size_t k) {
    const double lambda = static_cast<double>(k) / static_cast<double>(opts.lambdas - 1);
    const std::uint64_t run_seed = mix_seed(seed, k);
    Rng rng(run_seed);
    Scored best;
    for (std::size_t r = 0; r < restarts; ++r) {
      const std::size_t share = opts.budget / restarts + (r < opts.budget % restarts ? 1 : 0);
      FactoredDistribution current(sc.rvs, sc.spec, rng);
      Scored cur = score(schema, sc, channel, current, lambda);
      double step = opts.step;
      std::size_t misses = 0;
      for (std::size_t e = 1; e < share; ++e) {
        FactoredDistribution cand = current;
        cand.perturb(rng, step);
        const Scored s = score(schema, sc, channel, cand, lambda);
        if (s.value >= cur.value) {
          if (s.value > cur.value) misses = 0;
          current = std::move(cand);
          cur = s;
        } else if (++misses % 100 == 0) {
          step = std::max(0.05, step * 0.5);
        }
      }
      if (cur.value > best.value) best = cur;
    }
    out.best[k] = {lambda, best.best, run_seed};
    found[k] = best.value > kNegInf;
  });
  out.evaluations = opts.budget * opts.lambdas;

  for (std::size_t k = 0; k < opts.lambdas; ++k) {
    if (!found[k]) continue;
    const auto& p = out.best[k].rate;
    bool dominated = false;
    for (std::size_t j = 0; j < opts.lambdas && !dominated; ++j) {
      if (!found[j] || j == k) continue;
      const auto& q = out.best[j].rate;
      const bool ge = q.r1 >= p.r1 && q.r2 >= p.r2;
      const bool gt = q.r1 > p.r1 || q.r2 > p.r2;
      // Keep the first of exact duplicates.
      dominated = ge && (gt || j < k);
    }
    if (!dominated) out.pareto.push_back(out.best[k]);
  }
  return out;
}

}  // namespace cifc
