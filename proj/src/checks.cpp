#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cifc/verification.hpp"

namespace cifc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rhs_of(const LinearSystem& s, const std::string& label) {
  for (const auto& r : s.rows)
    if (r.label == label) return r.rhs;
  throw Error(ErrorCode::UnknownVariable, "no constraint " + label);
}

Channel channel_for(const VerifyOptions& opts, std::uint64_t seed) {
  return opts.channel ? *opts.channel : random_channel(seed);
}

Channel containment_channel(const VerifyOptions& opts) {
  return opts.channel ? *opts.channel : random_channel(7);
}

/// One numeric observation per sample, reduced in seed order.
struct Observation {
  std::string check;
  double violation = 0.0;
  std::string what;
};

using Observations = std::vector<Observation>;

/// Runs `per_sample` on every seed in parallel, then folds results into reports in order.
void run_samples(SuiteReport& suite, const VerifyOptions& opts, std::size_t n, std::uint64_t base,
                 const std::vector<std::pair<std::string, double>>& checks,
                 const std::function<Observations(std::uint64_t)>& per_sample) {
  std::vector<Observations> results(n);
  parallel_for(n, opts.threads, [&](std::size_t i) { results[i] = per_sample(sample_seed(base, i)); });
  for (const auto& [id, tol] : checks) {
    CheckReport rep;
    rep.id = id;
    rep.seeds_run = n;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& o : results[i]) {
        if (o.check == id) rep.observe(o.violation, tol, sample_seed(base, i), o.what);
      }
    }
    suite.checks.push_back(std::move(rep));
  }
}

double below_by(double value, double floor) { return value >= floor ? 0.0 : floor - value; }

/// Canonical row list of a system with zeroed variables removed.
struct CanonRow {
  Sense sense;
  std::vector<std::pair<std::string, std::int64_t>> coeffs;
  double rhs;
};

std::vector<CanonRow> canonical_rows(const LinearSystem& s, double tol) {
  std::vector<CanonRow> out;
  for (const auto& r : s.rows) {
    CanonRow c{r.sense, {}, r.rhs};
    bool nonneg = true;
    for (std::size_t j = 0; j < s.vars.size(); ++j) {
      if (s.zero[j] || r.coeffs[j] == 0) continue;
      c.coeffs.emplace_back(s.vars[j], r.coeffs[j]);
      nonneg = nonneg && r.coeffs[j] > 0;
    }
    if (c.coeffs.empty()) continue;
    if (r.sense == Sense::GE && nonneg && std::abs(r.rhs) <= tol) continue;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CanonRow& a, const CanonRow& b) {
    if (a.sense != b.sense) return a.sense < b.sense;
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.rhs < b.rhs;
  });
  return out;
}

/// Largest RHS gap between two canonical row lists; infinite if their shapes differ.
double structural_gap(const std::vector<CanonRow>& a, const std::vector<CanonRow>& b) {
  if (a.size() != b.size()) return kInf;
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].sense != b[i].sense || a[i].coeffs != b[i].coeffs) return kInf;
    gap = std::max(gap, std::abs(a[i].rhs - b[i].rhs));
  }
  return gap;
}

/// 0 when both empty or vertex sets match within tol; otherwise a positive gap.
double vertex_gap(const std::optional<Polytope2D>& a, const std::optional<Polytope2D>& b,
                  double tol) {
  if (!a && !b) return 0.0;
  if (!a || !b) return kInf;
  if (same_vertices(*a, *b, tol)) return 0.0;
  double gap = 0.0;
  auto nearest = [](const RatePoint& p, const std::vector<RatePoint>& vs) {
    double best = kInf;
    for (const auto& v : vs) best = std::min(best, std::max(std::abs(p.r1 - v.r1), std::abs(p.r2 - v.r2)));
    return best;
  };
  for (const auto& v : a->vertices) gap = std::max(gap, nearest(v, b->vertices));
  for (const auto& v : b->vertices) gap = std::max(gap, nearest(v, a->vertices));
  return std::max(gap, 2 * tol);
}

double containment_gap(const std::optional<Polytope2D>& outer, const std::optional<Polytope2D>& inner) {
  if (!inner) return 0.0;
  if (!outer) return kInf;
  return std::max(0.0, containment_margin(*outer, *inner));
}

std::string rate_list(const std::map<std::string, int>& coeffs) {
  std::ostringstream out;
  for (const auto& [k, v] : coeffs) out << v << "*" << k << " ";
  return out.str();
}

}  // namespace

SuiteReport check_devroye_identities(const VerifyOptions& opts) {
  SuiteReport suite{"devroye", {}};
  const auto in_schema = builtin_schema(SchemaId::RTD_IN);
  const auto out_schema = builtin_schema(SchemaId::DMT_OUT);
  const auto sc = devroye_scenario();
  const double tol = opts.tol_mi;

  run_samples(
      suite, opts, opts.samples, opts.seed,
      {{"(e13)-(e10) vs (e23)-(e20)", tol},
       {"(e14)-(e10) vs (e24)-(e20)", tol},
       {"I(U2c;U1c|X2) = 0", tol},
       {"(e15)-(e10) vs (e25)-(e20)", tol},
       {"(e16) vs (e26)", tol},
       {"(e17)-(e12) vs (e27)-(e21)-(e20)", tol},
       {"(e17) bullet >= 0", tol},
       {"(e18)-(e12) vs (e28)-(e21)-(e20)", tol},
       {"(e19)-(e12)+(e10) vs (e29)-(e21)", tol}},
      [&](std::uint64_t seed) {
        const auto d = sample_instance(sc, channel_for(opts, seed), seed);
        const auto in = instantiate(in_schema, d);
        const auto out = instantiate(out_schema, d);
        auto e = [&](const char* l) { return rhs_of(in, l); };
        auto f = [&](const char* l) { return rhs_of(out, l); };
        const double i_u2c_u1c = mutual_information(d, {{"U2c"}, {"U1c"}, {"X2"}});
        const double i_u1c_u1pb = mutual_information(d, {{"U1c"}, {"U1pb"}, {}});
        const double b5 = (e("(e17)") - e("(e12)")) - (f("(e27)") - f("(e21)") - f("(e20)"));
        return Observations{
            {"(e13)-(e10) vs (e23)-(e20)",
             (e("(e13)") - e("(e10)")) - (f("(e23)") - f("(e20)")), "difference"},
            {"(e14)-(e10) vs (e24)-(e20)",
             (e("(e14)") - e("(e10)")) - (f("(e24)") - f("(e20)")) - i_u2c_u1c,
             "difference minus I(U2c;U1c|X2)"},
            {"I(U2c;U1c|X2) = 0", i_u2c_u1c, "I(U2c;U1c|X2)"},
            {"(e15)-(e10) vs (e25)-(e20)",
             (e("(e15)") - e("(e10)")) - (f("(e25)") - f("(e20)")), "difference"},
            {"(e16) vs (e26)", e("(e16)") - f("(e26)"), "difference"},
            {"(e17)-(e12) vs (e27)-(e21)-(e20)", b5 - i_u1c_u1pb, "difference minus I(U1c;U1pb)"},
            {"(e17) bullet >= 0", below_by(b5, 0.0), "difference below zero"},
            {"(e18)-(e12) vs (e28)-(e21)-(e20)",
             (e("(e18)") - e("(e12)")) - (f("(e28)") - f("(e21)") - f("(e20)")), "difference"},
            {"(e19)-(e12)+(e10) vs (e29)-(e21)",
             (e("(e19)") - e("(e12)") + e("(e10)")) - (f("(e29)") - f("(e21)")), "difference"},
        };
      });

  for (const auto& pair : proved_containments()) {
    if (pair.inner != SchemaId::DMT_OUT) continue;
    suite.checks.push_back(sampled_region_containment(pair, containment_channel(opts), 100,
                                                      opts.seed, opts.tol_region, opts.threads));
  }
  return suite;
}

SuiteReport check_cc_reduction(const VerifyOptions& opts) {
  SuiteReport suite{"cc", {}};
  const auto cc = builtin_schema(SchemaId::CC);
  const auto ccp = builtin_schema(SchemaId::CCP);
  const auto split = builtin_schema(SchemaId::CCP_SPLIT);
  const auto rtd_cc = builtin_schema(SchemaId::RTD_CC);
  const auto sc = cao_chen_scenario();
  const auto table = cao_chen_table();
  const auto merged = cao_chen_merged_table();
  const double tol = opts.tol_mi;

  run_samples(suite, opts, opts.samples, opts.seed,
              {{"(37) = (37p)", tol},
               {"(39) = (39p)", tol},
               {"(40) = (40p)", tol},
               {"(38p) >= (38)", tol},
               {"(41p) >= (41)", tol},
               {"CCP split form = RTD_CC term by term", tol}},
              [&](std::uint64_t seed) {
                const auto d = sample_instance(sc, channel_for(opts, seed), seed);
                const auto a = instantiate(cc, d, table);
                const auto b = instantiate(ccp, d, merged);
                auto lhs_r = [&](const char* l) { return rhs_of(a, l); };
                auto rhs_r = [&](const char* l) { return rhs_of(b, l); };
                auto s1 = instantiate(split, d);
                auto s2 = instantiate(rtd_cc, d);
                s1.fix_zero("R1c'");
                s2.fix_zero("R1c'");
                return Observations{
                    {"(37) = (37p)", lhs_r("(37)") - rhs_r("(37p)"), "difference"},
                    {"(39) = (39p)", lhs_r("(39)") - rhs_r("(39p)"), "difference"},
                    {"(40) = (40p)", lhs_r("(40)") - rhs_r("(40p)"), "difference"},
                    {"(38p) >= (38)", below_by(rhs_r("(38p)") - lhs_r("(38)"), 0.0), "shortfall"},
                    {"(41p) >= (41)", below_by(rhs_r("(41p)") - lhs_r("(41)"), 0.0), "shortfall"},
                    {"CCP split form = RTD_CC term by term",
                     structural_gap(canonical_rows(s1, tol), canonical_rows(s2, tol)),
                     "row mismatch"},
                };
              });

  // Projected vertex sets on 100 instances. U11 is held constant so that V11' and U2pb carry
  // the same information; the closed-form CCP is compared for diagnostics only.
  const std::size_t n = 100;
  struct Result {
    double gap = 0.0;
    bool nonempty = false;
    bool native_differs = false;
    bool native_contains = false;
  };
  std::vector<Result> results(n);
  const Channel ch = containment_channel(opts);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    const auto seed = sample_seed(opts.seed, i);
    auto so = mixed_sampling(i);
    so.constant = {"U11"};
    const auto d = sample_instance(sc, ch, seed, so);
    auto s1 = instantiate(split, d);
    auto s2 = instantiate(rtd_cc, d);
    s1.fix_zero("R1c'");
    s2.fix_zero("R1c'");
    const auto p1 = project_or_empty(s1);
    const auto p2 = project_or_empty(s2);
    const auto native = project_or_empty(instantiate(ccp, d, merged));
    const bool contains = !p2 || (native && containment_margin(*native, *p2) <= 1e-9);
    results[i] = {vertex_gap(p1, p2, 1e-9), p2.has_value(), vertex_gap(native, p2, 1e-9) > 0.0, contains};
  });
  CheckReport rep;
  rep.id = "projected CCP = RTD_CC (R1c' = 0)";
  rep.seeds_run = n;
  double nonempty = 0, native = 0, contains = 0;
  for (std::size_t i = 0; i < n; ++i) {
    rep.observe(results[i].gap, 1e-9, sample_seed(opts.seed, i), "vertex gap");
    nonempty += results[i].nonempty;
    native += results[i].native_differs;
    contains += results[i].native_contains;
  }
  rep.stats["nonempty"] = nonempty;
  rep.stats["closed_form_ccp_differs"] = native;
  rep.stats["closed_form_ccp_contains_rtd_cc"] = contains;
  suite.checks.push_back(std::move(rep));

  for (const auto& pair : proved_containments()) {
    if (pair.inner != SchemaId::CCP_SPLIT) continue;
    suite.checks.push_back(sampled_region_containment(pair, ch, 100, opts.seed, opts.tol_region,
                                                      opts.threads));
  }
  return suite;
}

SuiteReport check_jiang_containment(const VerifyOptions& opts) {
  SuiteReport suite{"jiang", {}};
  const auto jiang = builtin_schema(SchemaId::JIANG);
  const auto ours = builtin_schema(SchemaId::RTD_JIANG);
  const auto sc = jiang_scenario();
  const auto table = jiang_table();
  const double tol = opts.tol_mi;
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"(J1-0)", "(us1-0)"}, {"(J1-1)", "(us1-1)"}, {"(J1-2)", "(us1-2)"}, {"(J1-4)", "(us1-3)"},
      {"(J1-5)", "(us1-4)"}, {"(J1-6)", "(us1-5)"}, {"(J1-7)", "(us1-6)"}, {"(J1-9)", "(us1-7)"},
  };

  // Left-hand sides, once: Jiang rates renamed must equal ours without R1c' and R2pb.
  CheckReport lhs;
  lhs.id = "paired left-hand sides";
  lhs.seeds_run = 1;
  for (const auto& [jl, ul] : pairs) {
    std::map<std::string, int> mapped, expect;
    for (const auto& [r, k] : jiang.constraint(jl).coeffs) mapped[table.map_rate(r)] += k;
    for (const auto& [r, k] : ours.constraint(ul).coeffs)
      if (r != "R1c'" && r != "R2pb") expect[r] += k;
    const bool same_sense = jiang.constraint(jl).sense == ours.constraint(ul).sense;
    if (mapped != expect || !same_sense) {
      ++lhs.failures;
      lhs.max_violation = kInf;
      lhs.messages.push_back(jl + " maps to " + rate_list(mapped) + "but " + ul + " has " +
                             rate_list(expect));
    }
  }
  suite.checks.push_back(std::move(lhs));

  std::vector<std::pair<std::string, double>> checks;
  for (const auto& [jl, ul] : pairs) checks.emplace_back(jl + " = " + ul, tol);
  checks.emplace_back("I(U1c;X2|U2c) = 0", tol);
  run_samples(suite, opts, opts.samples, opts.seed, checks, [&](std::uint64_t seed) {
    const auto d = sample_instance(sc, channel_for(opts, seed), seed);
    const auto j = instantiate(jiang, d, table);
    const auto u = instantiate(ours, d);
    Observations obs;
    for (const auto& [jl, ul] : pairs) obs.push_back({jl + " = " + ul, rhs_of(j, jl) - rhs_of(u, ul), "difference"});
    obs.push_back({"I(U1c;X2|U2c) = 0", mutual_information(d, {{"U1c"}, {"X2"}, {"U2c"}}), "value"});
    return obs;
  });

  const Channel ch = containment_channel(opts);
  for (const auto& pair : proved_containments()) {
    if (pair.inner != SchemaId::JIANG) continue;
    suite.checks.push_back(sampled_region_containment(pair, ch, 100, opts.seed, opts.tol_region,
                                                      opts.threads));
  }

  // Whenever (J1-3) or (J1-8) shapes the Jiang projection, the unified region is strictly larger.
  const std::size_t n = 100;
  struct Result {
    bool tight = false;
    bool strict = true;
  };
  std::vector<Result> results(n);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    const auto seed = sample_seed(opts.seed, i);
    const auto d = sample_instance(sc, ch, seed, mixed_sampling(i));
    const auto sys = instantiate(jiang, d, table);
    const auto full = project_or_empty(sys);
    bool tight = false;
    for (const char* label : {"(J1-3)", "(J1-8)"}) {
      auto relaxed = sys;
      relaxed.drop(label);
      if (vertex_gap(project_or_empty(relaxed), full, 1e-9) > 0.0) tight = true;
    }
    const auto outer = project_or_empty(instantiate(ours, d));
    results[i] = {tight, !tight || vertex_gap(outer, full, 1e-9) > 0.0};
  });
  CheckReport strict;
  strict.id = "tight (J1-3)/(J1-8) implies strict containment";
  strict.seeds_run = n;
  double tight = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tight += results[i].tight;
    strict.observe(results[i].strict ? 0.0 : kInf, 0.0, sample_seed(opts.seed, i),
                   "regions equal although a Jiang-only bound is tight");
  }
  strict.stats["tight"] = tight;
  suite.checks.push_back(std::move(strict));
  return suite;
}

SuiteReport check_maric_wlog(const VerifyOptions& opts) {
  SuiteReport suite{"maric", {}};
  const auto schema = builtin_schema(SchemaId::MARIC);
  const auto sc = maric_scenario();
  const auto plain = maric_table();
  const auto merged = maric_merged_table();
  const double tol = opts.tol_mi;
  run_samples(suite, opts, opts.samples, opts.seed,
              {{"(M1) merged - original = I(X2a;Y2|Q)", tol},
               {"(M1) merged >= original", tol},
               {"(M2) unchanged", tol},
               {"(M3) unchanged", tol},
               {"(M4) unchanged", tol},
               {"(M5) unchanged", tol}},
              [&](std::uint64_t seed) {
                const auto d = sample_instance(sc, channel_for(opts, seed), seed);
                const auto a = instantiate(schema, d, plain);
                const auto b = instantiate(schema, d, merged);
                auto diff = [&](const char* l) { return rhs_of(b, l) - rhs_of(a, l); };
                const double gain = mutual_information(d, {{"X2a"}, {"Y2"}, {"Q"}});
                return Observations{
                    {"(M1) merged - original = I(X2a;Y2|Q)", diff("(M1)") - gain, "difference"},
                    {"(M1) merged >= original", below_by(diff("(M1)"), 0.0), "shortfall"},
                    {"(M2) unchanged", diff("(M2)"), "difference"},
                    {"(M3) unchanged", diff("(M3)"), "difference"},
                    {"(M4) unchanged", diff("(M4)"), "difference"},
                    {"(M5) unchanged", diff("(M5)"), "difference"},
                };
              });
  return suite;
}

std::vector<ContainmentPair> proved_containments() {
  return {
      {SchemaId::RTD_IN, SchemaId::DMT_OUT, devroye_scenario(), identity_table(), identity_table(), {}},
      {SchemaId::RTD_CC, SchemaId::CCP_SPLIT, cao_chen_scenario(), identity_table(), identity_table(),
       {"R1c'"}},
      {SchemaId::RTD_JIANG, SchemaId::JIANG, jiang_scenario(), identity_table(), jiang_table(), {}},
  };
}

CheckReport sampled_region_containment(const ContainmentPair& pair, const Channel& channel,
                                       std::size_t n_samples, std::uint64_t seed, double tol,
                                       unsigned threads) {
  const auto outer = builtin_schema(pair.outer);
  const auto inner = builtin_schema(pair.inner);
  struct Result {
    double gap = 0.0;
    bool nonempty = false;
    bool retried = false;
  };
  std::vector<Result> results(n_samples);
  parallel_for(n_samples, threads, [&](std::size_t i) {
    const auto s = sample_seed(seed, i);
    const auto d = sample_instance(pair.scenario, channel, s, mixed_sampling(i));
    auto o = instantiate(outer, d, pair.outer_table);
    for (const auto& z : pair.outer_zero) o.fix_zero(z);
    const auto in = instantiate(inner, d, pair.inner_table);
    double gap = containment_gap(project_or_empty(o), project_or_empty(in));
    bool retried = false;
    if (gap > tol) {
      // Recheck with a tighter projection tolerance before reporting.
      retried = true;
      gap = containment_gap(project_or_empty(o, {1e-10}), project_or_empty(in, {1e-10}));
    }
    results[i] = {gap, project_or_empty(in).has_value(), retried};
  });
  CheckReport rep;
  rep.id = to_string(pair.inner) + " in " + to_string(pair.outer);
  rep.seeds_run = n_samples;
  double nonempty = 0, retried = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    rep.observe(results[i].gap, tol, sample_seed(seed, i), "containment margin");
    nonempty += results[i].nonempty;
    retried += results[i].retried;
  }
  rep.stats["inner_nonempty"] = nonempty;
  rep.stats["retried"] = retried;
  return rep;
}

SuiteReport check_containments(const VerifyOptions& opts) {
  SuiteReport suite{"containment", {}};
  for (const auto& pair : proved_containments()) {
    suite.checks.push_back(sampled_region_containment(pair, containment_channel(opts), 100,
                                                      opts.seed, opts.tol_region, opts.threads));
  }
  return suite;
}

SuiteReport check_droppability(const VerifyOptions& opts) {
  SuiteReport suite{"droppability", {}};
  const auto rtd = builtin_schema(SchemaId::RTD);
  struct Bullet {
    std::string label;
    std::set<std::string> zeroed;
    std::vector<std::string> constant;
  };
  const std::vector<Bullet> bullets = {
      {"(1d)", {"R2c", "R2pa", "R2pb", "R2pb'"}, {"U2c", "U2pb"}},
      {"(1e)", {"R2pa", "R2pb", "R2pb'"}, {"U2pb"}},
      {"(1g)", {"R2pb", "R2pb'"}, {"U2pb"}},
      {"(1i)", {"R1c", "R1c'", "R1pb", "R1pb'"}, {"U1c", "U1pb"}},
  };
  const auto sc = rtd_scenario();
  const std::size_t n = 50;
  for (const auto& b : bullets) {
    const auto labels = droppable_constraints(rtd, b.zeroed);
    if (std::find(labels.begin(), labels.end(), b.label) == labels.end()) {
      throw Error(ErrorCode::NotApplicable, b.label + " is not droppable under the given zeroing");
    }
    struct Result {
      double gap = 0.0;
      bool nonempty = false;
    };
    std::vector<Result> results(n);
    parallel_for(n, opts.threads, [&](std::size_t i) {
      const auto seed = sample_seed(opts.seed, i);
      SampleOptions so = mixed_sampling(i);
      so.constant = b.constant;
      const auto d = sample_instance(sc, channel_for(opts, seed), seed, so);
      auto sys = instantiate(rtd, d);
      for (const auto& z : b.zeroed) sys.fix_zero(z);
      auto dropped = sys;
      dropped.drop(b.label);
      const auto with = project_or_empty(sys);
      results[i] = {vertex_gap(with, project_or_empty(dropped), 1e-9), with.has_value()};
    });
    CheckReport rep;
    rep.id = "drop " + b.label;
    rep.seeds_run = n;
    double nonempty = 0;
    for (std::size_t i = 0; i < n; ++i) {
      rep.observe(results[i].gap, 1e-9, sample_seed(opts.seed, i), "vertex gap");
      nonempty += results[i].nonempty;
    }
    rep.stats["nonempty"] = nonempty;
    suite.checks.push_back(std::move(rep));
  }
  return suite;
}

}  // namespace cifc
