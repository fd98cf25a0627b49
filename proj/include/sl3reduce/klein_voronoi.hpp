#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sl3reduce/mat3.hpp"

namespace sl3 {

// Eigenframe of an NRS operator: real eigenvector g1 for the eigenvalue r,
// real and imaginary parts g2, g3 of a complex eigenvector for c.  In the
// coordinates of this frame the commuting rotation group T^1(A) acts as plain
// rotation of the (y, z) plane.
struct SpectralBasis {
  double r = 0;                       // real eigenvalue (unique, positive)
  double c_re = 0, c_im = 0;          // complex eigenvalue, c_im > 0
  std::array<double, 3> g1{}, g2{}, g3{};
  std::array<double, 9> inv{};        // inverse of the column frame [g1 g2 g3]
  double residual = 0;                // max relative eigen-equation defect

  std::array<double, 3> coords(const Vec3Z& w) const;
  std::array<double, 3> coords(const std::array<double, 3>& w) const;
};

// Requires spectrum_class(m) == NRS; throws SpectrumMismatch otherwise.
SpectralBasis spectral_basis(const Mat3Z& m);

// Intersection of the orbit T_A(w) with the half-plane pi_+ = {(x, rho)},
// rho = sqrt(y^2 + z^2) in frame coordinates.
struct PiPoint {
  double x = 0;
  double rho = 0;
  std::optional<Vec3Z> source;
};
PiPoint pi_project(const SpectralBasis& b, const Vec3Z& w);

// The orbit ellipse through w sampled at `samples` uniform angles.
std::vector<std::array<double, 3>> orbit_points(const SpectralBasis& b, const Vec3Z& w,
                                                int samples);

struct SailVertex {
  Vec3Z source;
  double x = 0, rho = 0;
  bool certified = false;
};

// Truncated factor-sails: the corner-facing convex chains of the pi-projections
// of all nonzero integer vectors with |w|_inf <= bound, split by sign(x).
struct FactorSail {
  std::vector<SailVertex> positive, negative;
};
FactorSail factor_sail(const Mat3Z& m, long bound);

// Conservative container for the convex hull of the orbits of p and A(p):
// a rotational frustum in frame coordinates, padded outward.  The sampled
// orbit cloud (circumscribed) is kept for bounding boxes.
struct ConvexRegion3 {
  std::array<double, 9> inv{};             // frame inverse for membership
  double x_lo = 0, x_hi = 0;               // profile endpoints (x ascending)
  double rho_at_lo = 0, rho_at_hi = 0;
  double pad = 1e-6;
  std::vector<std::array<double, 3>> cloud;

  bool contains(const std::array<double, 3>& q) const;
  bool contains(const Vec3Z& q) const;
};

ConvexRegion3 candidate_region(const Mat3Z& m, const Vec3Z& p, int samples = 256,
                               double padding = 1e-6);

// All nonzero integer points of the convex hull of the orbits of p, A(p) and
// A^2(p) (a superset of Gamma^0 union Gamma^1), enumerated exactly over the
// region's bounding box.  Includes p and A(p); excludes the origin.
// Throws RegionTooLarge when the scan exceeds cell_budget points.
std::vector<Vec3Z> candidate_vectors(const Mat3Z& m, const Vec3Z& p,
                                     long long cell_budget = 1000000000LL,
                                     int samples = 256, double padding = 1e-6);

}  // namespace sl3
