#include "sl3reduce/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "sl3reduce/klein_voronoi.hpp"
#include "sl3reduce/spectra.hpp"

namespace sl3 {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw Error(std::string("internal invariant violated: ") + what);
}

long long ll_gcd(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int int_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  Int r(static_cast<unsigned long>(u >> 64));
  r <<= 64;
  r += Int(static_cast<unsigned long>(u));
  return neg ? Int(-r) : r;
}

bool is_irreducible_det1(const CharPoly& cp) {
  return cp.b3 == 1 && cp.b1 != cp.b2 && cp.b1 + cp.b2 != -2;
}

// box scan kernel over a fixed-width integer type; T is wide enough that no
// intermediate value can overflow (checked by the caller against bound^3)
template <class T>
void box_scan(const CubicForm& f, long bound, bool early_exit_at_one, T& best_out,
              bool& best_valid, std::vector<Vec3Z>& witnesses, bool& stopped_early) {
  T c[10];
  for (int i = 0; i < 10; ++i)
    c[i] = static_cast<T>(f.c[i].get_si());  // caller guarantees the fit
  bool have = false;
  T best = 0;
  for (long x = -bound; x <= bound; ++x) {
    T tx = static_cast<T>(x);
    for (long y = -bound; y <= bound; ++y) {
      T ty = static_cast<T>(y);
      T a0 = ((c[0] * tx + c[1] * ty) * tx + c[3] * ty * ty) * tx + c[6] * ty * ty * ty;
      T a1 = c[2] * tx * tx + c[4] * tx * ty + c[7] * ty * ty;
      T a2 = c[5] * tx + c[8] * ty;
      long zstart = (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
      for (long z = zstart; z <= bound; ++z) {
        T tz = static_cast<T>(z);
        T v = ((c[9] * tz + a2) * tz + a1) * tz + a0;
        if (v < 0) v = -v;
        if (!have || v < best) {
          have = true;
          best = v;
          witnesses.clear();
        }
        if (v == best) {
          long long g = ll_gcd(ll_gcd(x, y), z);
          if (g == 1) witnesses.emplace_back(Int(x), Int(y), Int(z));
        }
        if (early_exit_at_one && have && best == 1) {
          best_out = best;
          best_valid = have;
          stopped_early = true;
          return;
        }
      }
    }
  }
  best_out = best;
  best_valid = have;
}

void box_scan_mpz(const CubicForm& f, long bound, bool early_exit_at_one, Int& best,
                  bool& have, std::vector<Vec3Z>& witnesses, bool& stopped_early) {
  have = false;
  Vec3Z w;
  for (long x = -bound; x <= bound; ++x)
    for (long y = -bound; y <= bound; ++y) {
      long zstart = (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
      for (long z = zstart; z <= bound; ++z) {
        w = Vec3Z(Int(x), Int(y), Int(z));
        Int v = abs_int(f.eval(w));
        if (!have || v < best) {
          have = true;
          best = v;
          witnesses.clear();
        }
        if (v == best && w.is_primitive()) witnesses.push_back(w);
        if (early_exit_at_one && best == 1) {
          stopped_early = true;
          return;
        }
      }
    }
}

}  // namespace

BoxSearchResult box_search_min(const Mat3Z& m, long bound) {
  if (bound < 1) throw Error("box bound must be >= 1");
  CubicForm f = cubic_form(m);
  bool early = is_irreducible_det1(charpoly_coeffs(m));

  Int sum(0);
  for (const Int& c : f.c) sum += abs_int(c);
  Int b3 = Int(bound) * Int(bound) * Int(bound);
  Int worst = sum * b3;

  BoxSearchResult r;
  bool have = false, stopped = false;
  if (mpz_sizeinbase(worst.get_mpz_t(), 2) <= 62) {
    long long best = 0;
    box_scan<long long>(f, bound, early, best, have, r.witnesses, stopped);
    r.mu = Int(static_cast<long>(best));
  } else if (mpz_sizeinbase(worst.get_mpz_t(), 2) <= 125) {
    __int128 best = 0;
    // coefficients may not fit a single limb; fall back to mpz in that case
    bool fits = true;
    for (const Int& c : f.c) fits = fits && c.fits_slong_p();
    if (fits) {
      box_scan<__int128>(f, bound, early, best, have, r.witnesses, stopped);
      r.mu = int_from_i128(best);
    } else {
      box_scan_mpz(f, bound, early, r.mu, have, r.witnesses, stopped);
    }
  } else {
    box_scan_mpz(f, bound, early, r.mu, have, r.witnesses, stopped);
  }
  check(have, "box search visited at least one point");
  r.early_exit = stopped;
  return r;
}

namespace {

bool is_perfect_hessenberg(const Mat3Z& m) {
  if (m.at(2, 0) != 0) return false;
  return type_of(m).first.is_perfect();
}

}  // namespace

MinMd min_md_over_candidates(const Mat3Z& m, const ReductionConfig& cfg) {
  CharPoly cp = charpoly_coeffs(m);
  if (cp.b3 != 1) throw NotUnimodular("min_md_over_candidates requires det = 1");
  SpectrumClass sc = spectrum_class(cp);
  if (sc == SpectrumClass::ReduciblePoly)
    throw ReduciblePolynomial("characteristic polynomial has a rational root");
  if (sc != SpectrumClass::NRS)
    throw SpectrumMismatch("min_md_over_candidates requires an NRS matrix");

  Mat3Z h = m;
  Mat3Z basis = Mat3Z::identity();
  bool transported = false;
  if (!is_perfect_hessenberg(m)) {
    PerfectReduction pr = reduce_to_perfect_with_basis(m, Vec3Z(1, 0, 0));
    h = std::move(pr.result);
    basis = std::move(pr.basis);
    transported = true;
  }

  // descend to a low-complexity conjugate first: a cheap box scan finds a
  // better seed whenever one is nearby, and each step strictly lowers the
  // complexity, so the candidate region for (1,0,0) stays small
  constexpr long kSeedBound = 8;
  for (;;) {
    Int sigma_h = complexity(type_of(h).first);
    if (sigma_h == 1) break;
    BoxSearchResult bs = box_search_min(h, kSeedBound);
    if (bs.mu >= sigma_h || bs.witnesses.empty()) break;
    PerfectReduction pr = reduce_to_perfect_with_basis(h, bs.witnesses.front());
    basis = basis * pr.basis;
    h = std::move(pr.result);
    transported = true;
  }

  std::vector<Vec3Z> cands =
      candidate_vectors(h, Vec3Z(1, 0, 0), cfg.cell_budget, cfg.orbit_samples, cfg.padding);
  CubicForm f = cubic_form(h);
  MinMd out;
  bool have = false;
  for (const Vec3Z& w : cands) {
    Int v = abs_int(f.eval(w));
    if (v == 0) continue;  // impossible for irreducible input
    if (!have || v < out.mu) {
      have = true;
      out.mu = v;
      out.argmins.clear();
    }
    if (v == out.mu) out.argmins.push_back(w);
  }
  check(have, "candidate set is nonempty");
  if (transported) {
    for (Vec3Z& w : out.argmins) w = basis * w;
    std::sort(out.argmins.begin(), out.argmins.end());
  }
  return out;
}

bool mod_q_obstruction(const Mat3Z& m, const Int& c, long q) {
  if (q < 2) throw Error("modulus must be >= 2");
  CubicForm f = cubic_form(m);
  long cf[10];
  for (int i = 0; i < 10; ++i) {
    Int r = f.c[i] % q;
    if (r < 0) r += q;
    cf[i] = r.get_si();
  }
  Int cr = c % q;
  if (cr < 0) cr += q;
  long cm = cr.get_si();
  long cneg = (q - cm) % q;
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y)
      for (long z = 0; z < q; ++z) {
        long a0 = (((cf[0] * x + cf[1] * y) % q * x + cf[3] * ((y * y) % q)) % q * x +
                   cf[6] * ((y * y % q) * y % q)) % q;
        long a1 = (cf[2] * (x * x % q) + cf[4] * (x * y % q) + cf[7] * (y * y % q)) % q;
        long a2 = (cf[5] * x + cf[8] * y) % q;
        long v = ((((cf[9] * z + a2) % q * z + a1) % q * z) + a0) % q;
        if (v == cm || v == cneg) return false;
      }
  return true;
}

namespace {

// values of F mod q attained over all residue classes
std::set<long> attained_mod_q(const CubicForm& f, long q) {
  long cf[10];
  for (int i = 0; i < 10; ++i) {
    Int r = f.c[i] % q;
    if (r < 0) r += q;
    cf[i] = r.get_si();
  }
  std::set<long> out;
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y)
      for (long z = 0; z < q; ++z) {
        long a0 = (((cf[0] * x + cf[1] * y) % q * x + cf[3] * ((y * y) % q)) % q * x +
                   cf[6] * ((y * y % q) * y % q)) % q;
        long a1 = (cf[2] * (x * x % q) + cf[4] * (x * y % q) + cf[7] * (y * y % q)) % q;
        long a2 = (cf[5] * x + cf[8] * y) % q;
        long v = ((((cf[9] * z + a2) % q * z + a1) % q * z) + a0) % q;
        out.insert(v);
        if (out.size() == static_cast<size_t>(q)) return out;
      }
  return out;
}

// smallest q in [2, 13] whose attained set avoids +-c for every 0 < c < sigma
std::optional<long> certificate_modulus(const Mat3Z& m, const Int& sigma) {
  if (sigma > 13) return std::nullopt;  // c = q would be obstructed by 0
  CubicForm f = cubic_form(m);
  long s = sigma.get_si();
  for (long q = std::max(2L, s); q <= 13; ++q) {
    auto att = attained_mod_q(f, q);
    bool ok = true;
    for (long c = 1; c < s && ok; ++c)
      if (att.count(c % q) || att.count((q - c % q) % q)) ok = false;
    if (ok) return q;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Reduced: return "Reduced";
    case VerdictKind::Nonreduced: return "Nonreduced";
    case VerdictKind::ProbablyReduced: return "ProbablyReduced";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::None: return "None";
    case CertificateKind::KleinVoronoiMinimum: return "KleinVoronoiMinimum";
    case CertificateKind::ModQObstruction: return "ModQObstruction";
  }
  return "?";
}

ReductionVerdict is_sigma_reduced(const Mat3Z& m, const ReductionConfig& cfg) {
  auto [t, perfect] = type_of(m);
  if (!perfect) throw Error("is_sigma_reduced expects a perfect Hessenberg matrix");
  CharPoly cp = charpoly_coeffs(m);
  if (cp.b3 != 1) throw NotUnimodular("is_sigma_reduced requires det = 1");
  SpectrumClass sc = spectrum_class(cp);
  if (sc == SpectrumClass::ReduciblePoly || sc == SpectrumClass::DegenerateDiscriminant)
    throw ReduciblePolynomial("characteristic polynomial has a rational root");

  Int sigma = complexity(t);
  ReductionVerdict v;
  if (sigma == 1) {
    // the MD-characteristic of an irreducible operator never vanishes
    v.kind = VerdictKind::Reduced;
    v.certificate = CertificateKind::KleinVoronoiMinimum;
    v.mu = Int(1);
    return v;
  }

  if (auto q = certificate_modulus(m, sigma)) {
    v.kind = VerdictKind::Reduced;
    v.certificate = CertificateKind::ModQObstruction;
    v.q = *q;
    v.mu = sigma;
    return v;
  }

  if (sc == SpectrumClass::NRS) {
    MinMd mm = min_md_over_candidates(m, cfg);
    check(mm.mu <= sigma, "global minimum bounded by the complexity");
    v.mu = mm.mu;
    if (mm.mu == sigma) {
      v.kind = VerdictKind::Reduced;
      v.certificate = CertificateKind::KleinVoronoiMinimum;
    } else {
      v.kind = VerdictKind::Nonreduced;
      v.certificate = CertificateKind::KleinVoronoiMinimum;
      v.witnesses = std::move(mm.argmins);
    }
    return v;
  }

  // RS: box-search evidence only
  BoxSearchResult box = box_search_min(m, cfg.box_bound);
  v.bound = cfg.box_bound;
  if (box.mu < sigma) {
    v.kind = VerdictKind::Nonreduced;
    v.mu = box.mu;
    v.witnesses = std::move(box.witnesses);
  } else {
    v.kind = VerdictKind::ProbablyReduced;
  }
  return v;
}

ReducedSet sigma_reduced_set(const Mat3Z& m, const ReductionConfig& cfg) {
  MinMd mm = min_md_over_candidates(m, cfg);
  std::set<Mat3Z> outs;
  for (const Vec3Z& w : mm.argmins) {
    Mat3Z h = reduce_to_perfect(m, w.primitive_part());
    check(complexity(type_of(h).first) == mm.mu, "reduced member realizes the minimum");
    outs.insert(std::move(h));
  }
  ReducedSet r;
  r.mu = mm.mu;
  r.matrices.assign(outs.begin(), outs.end());
  return r;
}

bool integer_conjugate(const Mat3Z& m1, const Mat3Z& m2, const ReductionConfig& cfg) {
  if (charpoly_coeffs(m1) != charpoly_coeffs(m2)) return false;
  ReducedSet s1 = sigma_reduced_set(m1, cfg);
  ReducedSet s2 = sigma_reduced_set(m2, cfg);
  std::vector<Mat3Z> shared;
  std::set_intersection(s1.matrices.begin(), s1.matrices.end(), s2.matrices.begin(),
                        s2.matrices.end(), std::back_inserter(shared));
  return !shared.empty();
}

std::optional<Mat3Z> detect_power_root(const Mat3Z& m, int k) {
  if (k != 2 && k != 3) throw Error("detect_power_root supports k in {2, 3}");
  SpectrumClass sc = spectrum_class(m);
  if (sc != SpectrumClass::NRS) throw SpectrumMismatch("detect_power_root requires NRS input");

  SpectralBasis sb = spectral_basis(m);
  using CLD = std::complex<long double>;
  CLD r(sb.r, 0), c(sb.c_re, sb.c_im), cb = std::conj(c);

  std::vector<std::pair<CLD, CLD>> branches;  // (root of r, root of c)
  if (k == 2) {
    long double sr = std::sqrt((long double)sb.r);
    CLD wc = std::sqrt(c);
    for (int i : {+1, -1})
      for (int j : {+1, -1}) branches.push_back({CLD(i * sr, 0), CLD((long double)j) * wc});
  } else {
    long double sr = std::cbrt((long double)sb.r);
    CLD wc = std::exp(std::log(c) / CLD(3));
    CLD om = std::polar((long double)1, (long double)(2 * M_PI / 3));
    branches.push_back({CLD(sr, 0), wc});
    branches.push_back({CLD(sr, 0), wc * om});
    branches.push_back({CLD(sr, 0), wc * om * om});
  }

  Mat3Z m2 = m * m;
  for (const auto& [s, wb] : branches) {
    // Lagrange interpolation of lambda -> lambda^{1/k} through the spectrum
    CLD nodes[3] = {r, c, cb};
    CLD vals[3] = {s, wb, std::conj(wb)};
    CLD c0(0), c1(0), c2(0);
    bool bad = false;
    for (int i = 0; i < 3 && !bad; ++i) {
      CLD p = nodes[(i + 1) % 3], q = nodes[(i + 2) % 3];
      CLD den = (nodes[i] - p) * (nodes[i] - q);
      if (std::abs(den) < 1e-18) {
        bad = true;
        break;
      }
      CLD w = vals[i] / den;
      c2 += w;
      c1 -= w * (p + q);
      c0 += w * p * q;
    }
    if (bad) continue;
    if (std::abs(c0.imag()) + std::abs(c1.imag()) + std::abs(c2.imag()) > 1e-6) continue;

    Mat3Z b;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = 0; j < 3 && ok; ++j) {
        long double val = c0.real() * (i == j ? 1 : 0) +
                          c1.real() * (long double)m.at(i, j).get_d() +
                          c2.real() * (long double)m2.at(i, j).get_d();
        if (std::abs(val) > 9e17) {
          ok = false;
          break;
        }
        long long rounded = llroundl(val);
        if (std::abs(val - (long double)rounded) > 0.3) {
          ok = false;
          break;
        }
        b.at(i, j) = Int(static_cast<long>(rounded));
      }
    if (!ok) continue;
    Int db = b.det();
    if (db != 1 && db != -1) continue;
    Mat3Z bk = b * b;
    if (k == 3) bk = bk * b;
    if (bk == m) return b;
  }
  return std::nullopt;
}

}  // namespace sl3
