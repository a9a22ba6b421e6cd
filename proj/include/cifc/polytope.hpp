#pragma once

#include <vector>

#include "cifc/region.hpp"

namespace cifc {

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

/// a1*R1 + a2*R2 <= b, scaled so that max(|a1|, |a2|) = 1.
struct HalfPlane {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;

  double slack(RatePoint p) const { return b - a1 * p.r1 - a2 * p.r2; }
};

/// Projected rate region: irredundant half-planes and counterclockwise vertices.
struct Polytope2D {
  std::vector<HalfPlane> halfplanes;
  std::vector<RatePoint> vertices;

  bool contains(RatePoint p, double tol = 1e-9) const;
  /// Largest weighted sum w1*R1 + w2*R2 over the region.
  double support(double w1, double w2) const;
};

struct FmeOptions {
  double tol = 1e-9;
};

/// Exact projection onto (R1, R2) by Fourier-Motzkin elimination over the
/// nonnegative rate vector. Integer left-hand sides are kept exact.
/// Throws Error(Infeasible) for an empty region and Error(Unbounded) when a
/// projected rate is not bounded by any decoding constraint.
Polytope2D fme_project(const LinearSystem& system, FmeOptions options = {});

/// Independent membership test: enumerates the vertices of the full
/// nonnegative system by brute force, projects them, and takes their hull.
class MembershipOracle {
 public:
  explicit MembershipOracle(const LinearSystem& system, double tol = 1e-9);

  bool empty() const { return hull_.empty(); }
  bool contains(RatePoint p, double tol = 1e-9) const;
  const std::vector<RatePoint>& hull() const { return hull_; }
  std::size_t full_vertex_count() const { return full_vertices_; }

 private:
  std::vector<RatePoint> hull_;
  std::size_t full_vertices_ = 0;
};

bool membership_oracle(const LinearSystem& system, RatePoint p, double tol = 1e-9);

/// True iff every vertex of `inner` satisfies every half-plane of `outer` within tol.
bool polytope_contains(const Polytope2D& outer, const Polytope2D& inner, double tol);

/// Largest half-plane violation of inner's vertices against outer (<= 0 means contained).
double containment_margin(const Polytope2D& outer, const Polytope2D& inner);

/// Mutual nearest-vertex equality within tol.
bool same_vertices(const Polytope2D& a, const Polytope2D& b, double tol);

double distance_to_boundary(const Polytope2D& p, RatePoint q);

}  // namespace cifc
