#include "sl3reduce/klein_voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <set>

#include "sl3reduce/spectra.hpp"

namespace sl3 {

namespace {

using LD = long double;
using CLD = std::complex<LD>;

std::array<LD, 3> cross3(const std::array<LD, 3>& a, const std::array<LD, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::array<CLD, 3> cross3c(const std::array<CLD, 3>& a, const std::array<CLD, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

LD norm2(const std::array<LD, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

LD norm2c(const std::array<CLD, 3>& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// exact sign of t^3 - b1 t^2 + b2 t - b3 at an integer point
int poly_sign(const CharPoly& cp, const Int& t) {
  Int v = ((t - cp.b1) * t + cp.b2) * t - cp.b3;
  return mpz_sgn(v.get_mpz_t());
}

}  // namespace

std::array<double, 3> SpectralBasis::coords(const Vec3Z& w) const {
  return coords(std::array<double, 3>{w.x.get_d(), w.y.get_d(), w.z.get_d()});
}

std::array<double, 3> SpectralBasis::coords(const std::array<double, 3>& w) const {
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i)
    r[i] = inv[3 * i] * w[0] + inv[3 * i + 1] * w[1] + inv[3 * i + 2] * w[2];
  return r;
}

SpectralBasis spectral_basis(const Mat3Z& m) {
  CharPoly cp = charpoly_coeffs(m);
  if (spectrum_class(cp) != SpectrumClass::NRS)
    throw SpectrumMismatch("matrix " + m.to_text() + " is not NRS");

  // bracket the unique real root with exact integer signs, then refine;
  // sign(p(t)) = sign(t - r) since the quadratic factor is positive
  Int hi = 1 + abs_int(cp.b1) + abs_int(cp.b2) + abs_int(cp.b3);
  Int lo = -hi;
  while (hi - lo > 1) {
    Int mid = (hi + lo) / 2;
    if (poly_sign(cp, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  LD b1 = LD(cp.b1.get_d()), b2 = LD(cp.b2.get_d()), b3 = LD(cp.b3.get_d());
  auto peval = [&](LD t) { return ((t - b1) * t + b2) * t - b3; };
  LD a = LD(lo.get_d()), b = LD(hi.get_d());
  for (int it = 0; it < 120; ++it) {
    LD mid = (a + b) / 2;
    if (peval(mid) > 0)
      b = mid;
    else
      a = mid;
  }
  LD r = (a + b) / 2;
  for (int it = 0; it < 4; ++it) {  // Newton polish; p'(r) = |r - c|^2 > 0
    LD f = peval(r);
    LD fp = (3 * r - 2 * b1) * r + b2;
    if (fp != 0) r -= f / fp;
  }

  LD cre = (b1 - r) / 2;
  LD q = (r - b1) * r + b2;  // |c|^2
  LD cim2 = q - cre * cre;
  if (!(cim2 > 0)) throw NumericalError("complex pair collapsed");
  LD cim = std::sqrt(cim2);

  // real eigenvector: largest cross product of two rows of (A - r I)
  std::array<std::array<LD, 3>, 3> rows;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      rows[i][j] = LD(m.at(i, j).get_d());
      if (i == j) rows[i][j] -= r;
    }
  std::array<LD, 3> g1{};
  LD best = -1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto c = cross3(rows[i], rows[j]);
      LD n = norm2(c);
      if (n > best) {
        best = n;
        g1 = c;
      }
    }
  if (best <= 0) throw NumericalError("real eigenvector not found");
  for (auto& v : g1) v /= best;

  // complex eigenvector for c = cre + i cim
  CLD c(cre, cim);
  std::array<std::array<CLD, 3>, 3> crows;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      crows[i][j] = CLD(LD(m.at(i, j).get_d()), 0);
      if (i == j) crows[i][j] -= c;
    }
  std::array<CLD, 3> w{};
  best = -1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto cc = cross3c(crows[i], crows[j]);
      LD n = norm2c(cc);
      if (n > best) {
        best = n;
        w = cc;
      }
    }
  if (best <= 0) throw NumericalError("complex eigenvector not found");
  // canonical phase: make the largest component real positive
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(w[i]) > std::abs(w[k])) k = i;
  CLD phase = std::conj(w[k]) / std::abs(w[k]);
  for (auto& v : w) v *= phase / best;

  SpectralBasis sb;
  sb.r = double(r);
  sb.c_re = double(cre);
  sb.c_im = double(cim);
  for (int i = 0; i < 3; ++i) {
    sb.g1[i] = double(g1[i]);
    sb.g2[i] = double(w[i].real());
    sb.g3[i] = double(w[i].imag());
  }

  // frame inverse via the adjugate
  LD f[9] = {LD(sb.g1[0]), LD(sb.g2[0]), LD(sb.g3[0]), LD(sb.g1[1]), LD(sb.g2[1]),
             LD(sb.g3[1]), LD(sb.g1[2]), LD(sb.g2[2]), LD(sb.g3[2])};
  LD det = f[0] * (f[4] * f[8] - f[5] * f[7]) - f[1] * (f[3] * f[8] - f[5] * f[6]) +
           f[2] * (f[3] * f[7] - f[4] * f[6]);
  if (det == 0) throw NumericalError("degenerate eigenframe");
  LD adj[9] = {f[4] * f[8] - f[5] * f[7], f[2] * f[7] - f[1] * f[8], f[1] * f[5] - f[2] * f[4],
               f[5] * f[6] - f[3] * f[8], f[0] * f[8] - f[2] * f[6], f[2] * f[3] - f[0] * f[5],
               f[3] * f[7] - f[4] * f[6], f[1] * f[6] - f[0] * f[7], f[0] * f[4] - f[1] * f[3]};
  for (int i = 0; i < 9; ++i) sb.inv[i] = double(adj[i] / det);

  // eigen-equation residuals, relative to |A| |g|
  LD anorm = 0;
  for (int i = 0; i < 9; ++i) anorm = std::max(anorm, std::abs(LD(m.a[i].get_d())));
  auto mul = [&](const std::array<LD, 3>& v) {
    std::array<LD, 3> out{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i] += LD(m.at(i, j).get_d()) * v[j];
    return out;
  };
  auto ag1 = mul(g1);
  LD res = 0;
  for (int i = 0; i < 3; ++i) res = std::max(res, std::abs(ag1[i] - r * g1[i]));
  res /= anorm * std::max(norm2(g1), LD(1e-30));
  std::array<CLD, 3> aw{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) aw[i] += CLD(LD(m.at(i, j).get_d()), 0) * w[j];
  LD resc = 0;
  for (int i = 0; i < 3; ++i) resc = std::max(resc, std::abs(aw[i] - c * w[i]));
  resc /= anorm * std::max(norm2c(w), LD(1e-30));
  sb.residual = double(std::max(res, resc));
  if (sb.residual > 1e-12)
    throw NumericalError("eigenframe residual " + std::to_string(sb.residual));
  return sb;
}

PiPoint pi_project(const SpectralBasis& b, const Vec3Z& w) {
  auto c = b.coords(w);
  PiPoint p;
  p.x = c[0];
  p.rho = std::hypot(c[1], c[2]);
  p.source = w;
  return p;
}

std::vector<std::array<double, 3>> orbit_points(const SpectralBasis& b, const Vec3Z& w,
                                                int samples) {
  auto c = b.coords(w);
  std::vector<std::array<double, 3>> out;
  out.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    double th = 2.0 * M_PI * j / samples;
    double y = c[1] * std::cos(th) - c[2] * std::sin(th);
    double z = c[1] * std::sin(th) + c[2] * std::cos(th);
    out.push_back({c[0] * b.g1[0] + y * b.g2[0] + z * b.g3[0],
                   c[0] * b.g1[1] + y * b.g2[1] + z * b.g3[1],
                   c[0] * b.g1[2] + y * b.g2[2] + z * b.g3[2]});
  }
  return out;
}

namespace {

struct SailPoint {
  double xi, rho;  // xi = |x|
  Vec3Z source;
};

// Corner-facing chain: the boundary of conv(points + positive quadrant),
// i.e. the convex envelope of the Pareto-minimal staircase.  Far-side hull
// vertices of the truncated cloud never enter it.
std::vector<SailPoint> corner_chain(std::vector<SailPoint> pts) {
  if (pts.empty()) return {};
  std::sort(pts.begin(), pts.end(), [](const SailPoint& a, const SailPoint& b) {
    if (a.xi != b.xi) return a.xi < b.xi;
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.source < b.source;
  });
  std::vector<SailPoint> stair;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    if (p.rho < best) {
      stair.push_back(p);
      best = p.rho;
    }
  }
  std::vector<SailPoint> chain;
  for (const auto& p : stair) {
    while (chain.size() >= 2) {
      const auto& a = chain[chain.size() - 2];
      const auto& b = chain.back();
      double cross = (b.xi - a.xi) * (p.rho - b.rho) - (b.rho - a.rho) * (p.xi - b.xi);
      if (cross <= 0)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  }
  return chain;
}


std::vector<SailVertex> finish_chain(const std::vector<SailPoint>& chain, long bound,
                                     int xsign) {
  std::vector<SailVertex> out;
  Int half(bound / 2);
  for (size_t i = 0; i < chain.size(); ++i) {
    SailVertex v;
    v.source = chain[i].source;
    v.x = xsign > 0 ? chain[i].xi : -chain[i].xi;
    v.rho = chain[i].rho;
    v.certified = i > 0 && i + 1 < chain.size() &&
                  chain[i - 1].source.norm_inf() <= half &&
                  chain[i + 1].source.norm_inf() <= half;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

FactorSail factor_sail(const Mat3Z& m, long bound) {
  if (bound < 2) throw Error("factor_sail bound must be >= 2");
  SpectralBasis sb = spectral_basis(m);
  std::vector<SailPoint> pos, neg;
  Vec3Z w;
  for (long x = -bound; x <= bound; ++x)
    for (long y = -bound; y <= bound; ++y)
      for (long z = -bound; z <= bound; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        w = Vec3Z(x, y, z);
        auto c = sb.coords(w);
        double rho = std::hypot(c[1], c[2]);
        if (c[0] > 0)
          pos.push_back({c[0], rho, w});
        else
          neg.push_back({-c[0], rho, w});
      }
  FactorSail sail;
  sail.positive = finish_chain(corner_chain(std::move(pos)), bound, +1);
  sail.negative = finish_chain(corner_chain(std::move(neg)), bound, -1);
  return sail;
}

bool ConvexRegion3::contains(const Vec3Z& q) const {
  return contains(std::array<double, 3>{q.x.get_d(), q.y.get_d(), q.z.get_d()});
}

bool ConvexRegion3::contains(const std::array<double, 3>& q) const {
  std::array<double, 3> c{};
  for (int i = 0; i < 3; ++i)
    c[i] = inv[3 * i] * q[0] + inv[3 * i + 1] * q[1] + inv[3 * i + 2] * q[2];
  double epsx = pad * (std::abs(x_lo) + std::abs(x_hi) + 1.0);
  if (c[0] < x_lo - epsx || c[0] > x_hi + epsx) return false;
  double rho = std::hypot(c[1], c[2]);
  double t = x_hi > x_lo ? (std::clamp(c[0], x_lo, x_hi) - x_lo) / (x_hi - x_lo) : 0.5;
  double limit = rho_at_lo + (rho_at_hi - rho_at_lo) * t;
  return rho <= limit + pad * (limit + 1.0);
}

namespace {

void append_scaled_orbit(std::vector<std::array<double, 3>>& cloud, const SpectralBasis& sb,
                         const Vec3Z& w, int samples, double padding) {
  auto c = sb.coords(w);
  double scale = (1.0 / std::cos(M_PI / samples)) * (1.0 + padding);
  for (int j = 0; j < samples; ++j) {
    double th = 2.0 * M_PI * j / samples;
    double y = (c[1] * std::cos(th) - c[2] * std::sin(th)) * scale;
    double z = (c[1] * std::sin(th) + c[2] * std::cos(th)) * scale;
    cloud.push_back({c[0] * sb.g1[0] + y * sb.g2[0] + z * sb.g3[0],
                     c[0] * sb.g1[1] + y * sb.g2[1] + z * sb.g3[1],
                     c[0] * sb.g1[2] + y * sb.g2[2] + z * sb.g3[2]});
  }
}

ConvexRegion3 region_from_points(const SpectralBasis& sb, const std::vector<Vec3Z>& pts,
                                 int samples, double padding) {
  ConvexRegion3 r;
  r.inv = sb.inv;
  r.pad = padding;
  bool first = true;
  for (const auto& p : pts) {
    auto c = sb.coords(p);
    double rho = std::hypot(c[1], c[2]);
    if (first || c[0] < r.x_lo) {
      r.x_lo = c[0];
      r.rho_at_lo = rho;
    }
    if (first || c[0] > r.x_hi) {
      r.x_hi = c[0];
      r.rho_at_hi = rho;
    }
    first = false;
    append_scaled_orbit(r.cloud, sb, p, samples, padding);
  }
  return r;
}

}  // namespace

ConvexRegion3 candidate_region(const Mat3Z& m, const Vec3Z& p, int samples, double padding) {
  if (p.is_zero()) throw Error("candidate_region requires a nonzero point");
  SpectralBasis sb = spectral_basis(m);
  return region_from_points(sb, {p, m * p}, samples, padding);
}

std::vector<Vec3Z> candidate_vectors(const Mat3Z& m, const Vec3Z& p, long long cell_budget,
                                     int samples, double padding) {
  if (p.is_zero()) throw Error("candidate_vectors requires a nonzero point");
  SpectralBasis sb = spectral_basis(m);
  Vec3Z p1 = m * p;
  Vec3Z p2 = m * p1;
  // hull of Gamma^0 union Gamma^1: the chord profile over two periods
  ConvexRegion3 region = region_from_points(sb, {p, p1, p2}, samples, padding);

  double lo[3], hi[3];
  for (int i = 0; i < 3; ++i) {
    lo[i] = 1e300;
    hi[i] = -1e300;
  }
  for (const auto& q : region.cloud)
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], q[i]);
      hi[i] = std::max(hi[i], q[i]);
    }
  long long ilo[3], ihi[3];
  for (int i = 0; i < 3; ++i) {
    if (std::abs(lo[i]) > 1e15 || std::abs(hi[i]) > 1e15)
      throw RegionTooLarge("candidate region bounding box overflows");
    ilo[i] = static_cast<long long>(std::floor(lo[i])) - 1;
    ihi[i] = static_cast<long long>(std::ceil(hi[i])) + 1;
  }

  // slab axis: the coordinate the x-functional (first row of inv) sees best
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(region.inv[i]) > std::abs(region.inv[k])) k = i;
  int i1 = (k + 1) % 3, i2 = (k + 2) % 3;
  double uk = region.inv[k], u1 = region.inv[i1], u2 = region.inv[i2];
  double epsx = padding * (std::abs(region.x_lo) + std::abs(region.x_hi) + 1.0);

  std::set<Vec3Z> found;
  long long budget = cell_budget;
  long long coords[3];
  for (long long a = ilo[i1]; a <= ihi[i1]; ++a) {
    for (long long b = ilo[i2]; b <= ihi[i2]; ++b) {
      if (--budget < 0) throw RegionTooLarge("candidate scan exceeded the cell budget");
      double partial = u1 * double(a) + u2 * double(b);
      double t0 = (region.x_lo - epsx - partial) / uk;
      double t1 = (region.x_hi + epsx - partial) / uk;
      if (t0 > t1) std::swap(t0, t1);
      long long klo = std::max(ilo[k], static_cast<long long>(std::floor(t0)) - 1);
      long long khi = std::min(ihi[k], static_cast<long long>(std::ceil(t1)) + 1);
      for (long long cc = klo; cc <= khi; ++cc) {
        if (--budget < 0) throw RegionTooLarge("candidate scan exceeded the cell budget");
        coords[i1] = a;
        coords[i2] = b;
        coords[k] = cc;
        if (coords[0] == 0 && coords[1] == 0 && coords[2] == 0) continue;
        Vec3Z w(Int(static_cast<long>(coords[0])), Int(static_cast<long>(coords[1])),
                Int(static_cast<long>(coords[2])));
        if (region.contains(w)) found.insert(std::move(w));
      }
    }
  }
  found.insert(p);
  found.insert(p1);
  return {found.begin(), found.end()};
}

}  // namespace sl3
