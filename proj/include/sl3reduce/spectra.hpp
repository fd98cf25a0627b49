#pragma once

#include <string>

#include "sl3reduce/bipoly.hpp"
#include "sl3reduce/hessenberg.hpp"
#include "sl3reduce/mat3.hpp"

namespace sl3 {

enum class SpectrumClass { ReduciblePoly, RS, NRS, DegenerateDiscriminant };

std::string to_string(SpectrumClass);

// Exact classification from integer data.  For det = 1 the only possible
// rational roots are +-1, so reducibility is b1 = b2 or b1 + b2 = -2.
SpectrumClass spectrum_class(const Mat3Z& m);
SpectrumClass spectrum_class(const CharPoly& cp);

// The two quadratics p1, p2 whose zero parabolas bound the NRS region.
struct ParabolaPair {
  HessenbergType type;
  Rational alpha1, beta1, gamma1;
  Rational alpha2, beta2, gamma2;

  Rational p1(const Rational& m, const Rational& n) const;
  Rational p2(const Rational& m, const Rational& n) const;
  BiPoly p1_poly() const;
  BiPoly p2_poly() const;
};

ParabolaPair parabola_coefficients(const HessenbergType& t, const Vec3Z& v);

enum class NrsRegionTest { InsideShrunk, Boundary, OutsideGrown };

// Corrected two-sided parabola region test: InsideShrunk iff p1, p2 are both
// <= -eps or both >= eps; OutsideGrown iff that fails even with -eps.
NrsRegionTest asymptotic_nrs_test(const HessenbergType& t, const Vec3Z& v, const Int& m,
                                  const Int& n, const Rational& eps);
NrsRegionTest asymptotic_nrs_test(const ParabolaPair& pp, const Int& m, const Int& n,
                                  const Rational& eps);

// The discriminant of the characteristic polynomial of H_Omega^v(m,n) as a
// polynomial in (m, n); total degree <= 4.
BiPoly delta_polynomial(const HessenbergType& t, const Vec3Z& v);

// Sign s and degree-<=2 residual of delta - s * 16 a21^2 a32^2 b3 * p1 * p2.
// Throws NoFactorization if neither sign kills the degree-4 part.
struct ParabolaIdentity {
  int sign;
  BiPoly residual;
};
ParabolaIdentity parabola_identity_check(const HessenbergType& t, const Vec3Z& v);

// Rational conjugation taking the family H_Omega^v onto the family
// H_Omega0^(1,0,0): X^{-1} * H(m,n) * X = H_Omega0(m', n') with
// (m', n') = (a21 a32 m - a11 a32 n + cm, a32 n + cn).  X is the integer
// Krylov matrix [e1 | H e1 | H^2 e1] with det = a21^2 a32; the change of
// basis it defines is rational.
struct Normalization {
  Mat3Q x;
  Int lin_mm, lin_mn, const_m;  // m' = lin_mm * m + lin_mn * n + const_m
  Int lin_nn, const_n;          // n' = lin_nn * n + const_n

  std::pair<Int, Int> apply(const Int& m, const Int& n) const;
};
Normalization normalization(const HessenbergType& t, const Vec3Z& v);

// Expansion of delta(-p1(0,t) + eps, t): degree must be 4 with leading
// coefficient a21 a32^5 eps / 4 (for eps != 0).
struct RayLeadingCoefficient {
  bool ok;
  int degree;
  Rational t4_coefficient;
};
RayLeadingCoefficient ray_leading_coefficient_check(const HessenbergType& t, const Vec3Z& v,
                                                    const Rational& eps);

}  // namespace sl3
