#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

#include "cifc/polytope.hpp"

namespace cifc {

namespace {

// a . z <= b over z = (active rates..., t1, t2).
struct Row {
  std::vector<std::int64_t> a;
  double b = 0.0;
  bool guard = false;
  std::uint64_t history = 0;
};

void normalize(Row& r) {
  std::int64_t g = 0;
  for (auto v : r.a) g = std::gcd(g, v < 0 ? -v : v);
  if (g > 1) {
    for (auto& v : r.a) v /= g;
    r.b /= static_cast<double>(g);
  }
}

bool all_zero(const std::vector<std::int64_t>& a) {
  return std::all_of(a.begin(), a.end(), [](auto v) { return v == 0; });
}

// Implied by the single-variable bounds -z <= 0, which themselves are kept.
bool trivially_true(const Row& r) {
  const auto nonzero = std::count_if(r.a.begin(), r.a.end(), [](auto v) { return v != 0; });
  return nonzero > 1 && r.b >= 0.0 &&
         std::all_of(r.a.begin(), r.a.end(), [](auto v) { return v <= 0; });
}

/// Keeps the tightest row per coefficient vector and drops rows implied by nonnegativity.
std::vector<Row> prune(std::vector<Row> rows, double tol) {
  std::map<std::vector<std::int64_t>, Row> best;
  for (auto& r : rows) {
    normalize(r);
    if (all_zero(r.a)) {
      if (r.b < -tol) {
        std::ostringstream msg;
        msg << "derived 0 <= " << r.b;
        throw Error(ErrorCode::Infeasible, msg.str());
      }
      continue;
    }
    if (trivially_true(r)) continue;
    auto [it, inserted] = best.try_emplace(r.a, r);
    if (!inserted && r.b < it->second.b) it->second = r;
  }
  std::vector<Row> out;
  out.reserve(best.size());
  for (auto& [_, r] : best) out.push_back(std::move(r));
  return out;
}

/// Replaces variable v using the equation eq (eq.a[v] > 0, eq.b == 0 meaning equality).
void substitute(std::vector<Row>& rows, const Row& eq, std::size_t v) {
  const std::int64_t ev = eq.a[v];
  for (auto& r : rows) {
    const std::int64_t av = r.a[v];
    if (av == 0) continue;
    for (std::size_t j = 0; j < r.a.size(); ++j) r.a[j] = ev * r.a[j] - av * eq.a[j];
    r.b = static_cast<double>(ev) * r.b;
    normalize(r);
  }
}


}  // namespace

bool Polytope2D::contains(RatePoint p, double tol) const {
  if (vertices.empty()) return false;
  return std::all_of(halfplanes.begin(), halfplanes.end(),
                     [&](const HalfPlane& h) { return h.slack(p) >= -tol; });
}

double Polytope2D::support(double w1, double w2) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::max(best, w1 * v.r1 + w2 * v.r2);
  return best;
}

Polytope2D fme_project(const LinearSystem& system, FmeOptions options) {
  const double tol = options.tol;
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < system.vars.size(); ++j)
    if (!system.zero[j]) active.push_back(j);
  const std::size_t n = active.size();
  const std::size_t width = n + 2;
  const std::size_t t1 = n, t2 = n + 1;

  std::vector<Row> rows;
  double guard_bound = 1.0;
  for (const auto& c : system.rows) {
    Row r{std::vector<std::int64_t>(width, 0), c.rhs, false, 0};
    const std::int64_t s = c.sense == Sense::LE ? 1 : -1;
    for (std::size_t k = 0; k < n; ++k) r.a[k] = s * c.coeffs[active[k]];
    r.b = s * c.rhs;
    guard_bound += std::max(0.0, c.rhs);
    rows.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < n; ++k) {
    Row r{std::vector<std::int64_t>(width, 0), 0.0, false, 0};
    r.a[k] = -1;
    rows.push_back(std::move(r));
  }

  // Projection equations r_i . x - t_i = 0, solved for one rate each.
  std::vector<Row> equations;
  for (const auto* proj : {&system.r1, &system.r2}) {
    Row e{std::vector<std::int64_t>(width, 0), 0.0, false, 0};
    for (std::size_t k = 0; k < n; ++k) e.a[k] = (*proj)[active[k]];
    e.a[proj == &system.r1 ? t1 : t2] = -1;
    equations.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < equations.size(); ++i) {
    Row eq = equations[i];
    std::size_t pivot = width;
    for (std::size_t k = 0; k < n; ++k) {
      if (eq.a[k] != 0 && (pivot == width || std::abs(eq.a[k]) < std::abs(eq.a[pivot]))) {
        pivot = k;
      }
    }
    if (pivot == width) {
      // Only t's remain: keep as two inequalities.
      Row neg = eq;
      for (auto& v : neg.a) v = -v;
      rows.push_back(eq);
      rows.push_back(neg);
      continue;
    }
    if (eq.a[pivot] < 0)
      for (auto& v : eq.a) v = -v;
    substitute(rows, eq, pivot);
    std::vector<Row> rest(equations.begin() + static_cast<std::ptrdiff_t>(i) + 1, equations.end());
    substitute(rest, eq, pivot);
    std::copy(rest.begin(), rest.end(), equations.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }

  for (std::size_t t : {t1, t2}) {
    Row nonneg{std::vector<std::int64_t>(width, 0), 0.0, false, 0};
    nonneg.a[t] = -1;
    rows.push_back(nonneg);
    Row guard{std::vector<std::int64_t>(width, 0), guard_bound, true, 0};
    guard.a[t] = 1;
    rows.push_back(guard);
  }

  rows = prune(std::move(rows), tol);
  const bool track_history = rows.size() <= 64;
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].history = track_history ? (std::uint64_t{1} << i) : 0;

  std::vector<bool> eliminated(n, false);
  std::size_t steps = 0;
  for (;;) {
    // Cheapest remaining variable by the number of generated rows.
    std::size_t best = n;
    long best_cost = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (eliminated[k]) continue;
      long pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.a[k] > 0) ++pos;
        if (r.a[k] < 0) ++neg;
      }
      const long cost = pos * neg - pos - neg;
      if (best == n || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    if (best == n) break;
    eliminated[best] = true;
    ++steps;

    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      if (r.a[best] > 0) {
        pos.push_back(std::move(r));
      } else if (r.a[best] < 0) {
        neg.push_back(std::move(r));
      } else {
        next.push_back(std::move(r));
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const std::uint64_t hist = p.history | q.history;
        // Chernikov: combinations of more than steps + 1 originals are redundant.
        if (track_history && static_cast<std::size_t>(std::popcount(hist)) > steps + 1) continue;
        const std::int64_t ap = p.a[best], aq = -q.a[best];
        Row r{std::vector<std::int64_t>(width, 0), aq * p.b + ap * q.b, p.guard || q.guard, hist};
        for (std::size_t j = 0; j < width; ++j) r.a[j] = aq * p.a[j] + ap * q.a[j];
        r.a[best] = 0;
        next.push_back(std::move(r));
      }
    }
    rows = prune(std::move(next), tol);
  }

  // Two-dimensional half-planes in (t1, t2).
  struct Line {
    HalfPlane h;
    bool guard;
  };
  std::vector<Line> lines;
  for (const auto& r : rows) {
    const double a1 = static_cast<double>(r.a[t1]);
    const double a2 = static_cast<double>(r.a[t2]);
    const double scale = std::max(std::abs(a1), std::abs(a2));
    lines.push_back({{a1 / scale, a2 / scale, r.b / scale}, r.guard});
  }
  // The guard box and t >= 0 rows are always present unless pruned as duplicates.
  std::vector<RatePoint> pts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& p = lines[i].h;
      const auto& q = lines[j].h;
      const double det = p.a1 * q.a2 - p.a2 * q.a1;
      if (std::abs(det) < 1e-12) continue;
      RatePoint v{(p.b * q.a2 - p.a2 * q.b) / det, (p.a1 * q.b - p.b * q.a1) / det};
      const bool feasible = std::all_of(lines.begin(), lines.end(), [&](const Line& l) {
        return l.h.slack(v) >= -tol;
      });
      if (!feasible) continue;
      const bool dup = std::any_of(pts.begin(), pts.end(), [&](const RatePoint& u) {
        return std::abs(u.r1 - v.r1) <= tol && std::abs(u.r2 - v.r2) <= tol;
      });
      if (!dup) pts.push_back(v);
    }
  }
  if (pts.empty()) throw Error(ErrorCode::Infeasible, "projected region is empty");

  // Counterclockwise around the centroid, lexicographic on ties.
  RatePoint c{0.0, 0.0};
  for (const auto& p : pts) {
    c.r1 += p.r1 / static_cast<double>(pts.size());
    c.r2 += p.r2 / static_cast<double>(pts.size());
  }
  std::sort(pts.begin(), pts.end(), [&](const RatePoint& a, const RatePoint& b) {
    const double ta = std::atan2(a.r2 - c.r2, a.r1 - c.r1);
    const double tb = std::atan2(b.r2 - c.r2, b.r1 - c.r1);
    if (ta != tb) return ta < tb;
    return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
  });
  bool changed = pts.size() > 2;
  while (changed && pts.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[(i + pts.size() - 1) % pts.size()];
      const auto& b = pts[i];
      const auto& d = pts[(i + 1) % pts.size()];
      const double cross = (b.r1 - a.r1) * (d.r2 - b.r2) - (b.r2 - a.r2) * (d.r1 - b.r1);
      if (std::abs(cross) <= tol * tol) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }

  Polytope2D out;
  out.vertices = pts;
  for (const auto& l : lines) {
    const bool tight = std::any_of(pts.begin(), pts.end(), [&](const RatePoint& v) {
      return std::abs(l.h.slack(v)) <= tol;
    });
    if (!tight) continue;
    if (l.guard) {
      throw Error(ErrorCode::Unbounded,
                  "guard bound is active; a projected rate lacks a decoding constraint");
    }
    out.halfplanes.push_back(l.h);
  }
  return out;
}

bool polytope_contains(const Polytope2D& outer, const Polytope2D& inner, double tol) {
  return containment_margin(outer, inner) <= tol;
}

double containment_margin(const Polytope2D& outer, const Polytope2D& inner) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& v : inner.vertices)
    for (const auto& h : outer.halfplanes) worst = std::max(worst, -h.slack(v));
  if (outer.vertices.empty() && !inner.vertices.empty())
    return std::numeric_limits<double>::infinity();
  return inner.vertices.empty() ? 0.0 : worst;
}

bool same_vertices(const Polytope2D& a, const Polytope2D& b, double tol) {
  auto covered = [tol](const std::vector<RatePoint>& xs, const std::vector<RatePoint>& ys) {
    return std::all_of(xs.begin(), xs.end(), [&](const RatePoint& x) {
      return std::any_of(ys.begin(), ys.end(), [&](const RatePoint& y) {
        return std::abs(x.r1 - y.r1) <= tol && std::abs(x.r2 - y.r2) <= tol;
      });
    });
  };
  return covered(a.vertices, b.vertices) && covered(b.vertices, a.vertices);
}

double distance_to_boundary(const Polytope2D& p, RatePoint q) {
  const auto& v = p.vertices;
  if (v.empty()) return std::numeric_limits<double>::infinity();
  auto seg = [&](const RatePoint& a, const RatePoint& b) {
    const double dx = b.r1 - a.r1, dy = b.r2 - a.r2;
    const double len2 = dx * dx + dy * dy;
    double s = len2 > 0.0 ? ((q.r1 - a.r1) * dx + (q.r2 - a.r2) * dy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::hypot(q.r1 - a.r1 - s * dx, q.r2 - a.r2 - s * dy);
  };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, seg(v[i], v[(i + 1) % v.size()]));
  return best;
}

}  // namespace cifc
