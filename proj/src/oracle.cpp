#include <algorithm>
#include <cmath>

#include "cifc/polytope.hpp"

namespace cifc {

namespace {

struct DenseRow {
  std::vector<double> a;
  double b;
};

// Solves the square system picked by `idx`; false if singular.
bool solve(const std::vector<DenseRow>& rows, const std::vector<std::size_t>& idx,
           std::vector<double>& x) {
  const std::size_t n = idx.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = rows[idx[i]].a[j];
    m[i][n] = rows[idx[i]].b;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) < 1e-10) return false;
    std::swap(m[p], m[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return true;
}

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

std::vector<RatePoint> monotone_chain(std::vector<RatePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RatePoint& a, const RatePoint& b) {
                          return std::abs(a.r1 - b.r1) <= 1e-12 && std::abs(a.r2 - b.r2) <= 1e-12;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<RatePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double segment_distance(RatePoint q, RatePoint a, RatePoint b) {
  const double dx = b.r1 - a.r1, dy = b.r2 - a.r2;
  const double len2 = dx * dx + dy * dy;
  const double s =
      len2 > 0.0 ? std::clamp(((q.r1 - a.r1) * dx + (q.r2 - a.r2) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(q.r1 - a.r1 - s * dx, q.r2 - a.r2 - s * dy);
}

}  // namespace

MembershipOracle::MembershipOracle(const LinearSystem& system, double tol) {
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < system.vars.size(); ++j)
    if (!system.zero[j]) free.push_back(j);
  const std::size_t n = free.size();

  std::vector<DenseRow> rows;
  for (const auto& c : system.rows) {
    DenseRow r{std::vector<double>(n), c.rhs};
    const double s = c.sense == Sense::LE ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) r.a[k] = s * static_cast<double>(c.coeffs[free[k]]);
    r.b *= s;
    rows.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < n; ++k) {
    DenseRow r{std::vector<double>(n, 0.0), 0.0};
    r.a[k] = -1.0;
    rows.push_back(std::move(r));
  }

  std::vector<RatePoint> projected;
  if (n == 0) {
    const bool ok = std::all_of(rows.begin(), rows.end(), [&](const DenseRow& r) { return r.b >= -tol; });
    if (ok) projected.push_back({0.0, 0.0});
  } else if (rows.size() >= n) {
    // Walk all n-subsets in lexicographic order.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<double> x;
    for (;;) {
      if (solve(rows, idx, x)) {
        bool ok = true;
        for (const auto& r : rows) {
          double lhs = 0.0;
          for (std::size_t k = 0; k < n; ++k) lhs += r.a[k] * x[k];
          if (lhs > r.b + tol) {
            ok = false;
            break;
          }
        }
        if (ok) {
          ++full_vertices_;
          RatePoint p;
          for (std::size_t k = 0; k < n; ++k) {
            p.r1 += static_cast<double>(system.r1[free[k]]) * x[k];
            p.r2 += static_cast<double>(system.r2[free[k]]) * x[k];
          }
          projected.push_back(p);
        }
      }
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == rows.size() - n + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  hull_ = monotone_chain(std::move(projected));
}

bool MembershipOracle::contains(RatePoint p, double tol) const {
  if (hull_.empty()) return false;
  if (hull_.size() == 1) return std::hypot(p.r1 - hull_[0].r1, p.r2 - hull_[0].r2) <= tol;
  if (hull_.size() == 2) return segment_distance(p, hull_[0], hull_[1]) <= tol;
  bool inside = true;
  for (std::size_t i = 0; i < hull_.size(); ++i) {
    if (cross(hull_[i], hull_[(i + 1) % hull_.size()], p) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return true;
  for (std::size_t i = 0; i < hull_.size(); ++i)
    if (segment_distance(p, hull_[i], hull_[(i + 1) % hull_.size()]) <= tol) return true;
  return false;
}

bool membership_oracle(const LinearSystem& system, RatePoint p, double tol) {
  return MembershipOracle(system, tol).contains(p, tol);
}

}  // namespace cifc
