#include "sl3reduce/spectra.hpp"

namespace sl3 {

std::string to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::ReduciblePoly: return "ReduciblePoly";
    case SpectrumClass::RS: return "RS";
    case SpectrumClass::NRS: return "NRS";
    case SpectrumClass::DegenerateDiscriminant: return "DegenerateDiscriminant";
  }
  return "?";
}

SpectrumClass spectrum_class(const CharPoly& cp) {
  if (cp.b3 != 1) throw Error("spectrum_class expects det = 1");
  // p(1) = b1 - b2, p(-1) = b1 + b2 + 2
  if (cp.b1 == cp.b2 || cp.b1 + cp.b2 == -2) return SpectrumClass::ReduciblePoly;
  Int d = discriminant_from_coeffs(cp);
  if (d < 0) return SpectrumClass::NRS;
  if (d > 0) return SpectrumClass::RS;
  return SpectrumClass::DegenerateDiscriminant;  // impossible for irreducible cubics
}

SpectrumClass spectrum_class(const Mat3Z& m) { return spectrum_class(charpoly_coeffs(m)); }

Rational ParabolaPair::p1(const Rational& m, const Rational& n) const {
  return m - alpha1 * n * n - beta1 * n - gamma1;
}

Rational ParabolaPair::p2(const Rational& m, const Rational& n) const {
  Rational a21(type.a21);
  Rational s = (a21 * m - Rational(type.a11) * n) / a21;
  return n / a21 - alpha2 * s * s - beta2 * s - gamma2;
}

BiPoly ParabolaPair::p1_poly() const {
  BiPoly m = BiPoly::var_m(), n = BiPoly::var_n();
  return m - n * n * alpha1 - n * beta1 - BiPoly::constant(gamma1);
}

BiPoly ParabolaPair::p2_poly() const {
  BiPoly m = BiPoly::var_m(), n = BiPoly::var_n();
  Rational a21(type.a21);
  BiPoly s = (m * a21 - n * Rational(type.a11)) * (Rational(1) / a21);
  return n * (Rational(1) / a21) - s * s * alpha2 - s * beta2 - BiPoly::constant(gamma2);
}

ParabolaPair parabola_coefficients(const HessenbergType& t, const Vec3Z& v) {
  if (t.a21 == 0 || t.a32 == 0) throw DegenerateType("a21 and a32 must be nonzero");
  CharPoly cp = charpoly_coeffs(family_matrix(t, v, 0, 0));
  if (cp.b3 == 0) throw DegenerateType("family determinant vanishes");
  Rational a21(t.a21), a32(t.a32), b1(cp.b1), b2(cp.b2), b3(cp.b3);
  Rational a33(v.z);  // third column seed holds a33 at (m,n) = (0,0)
  ParabolaPair pp;
  pp.type = t;
  pp.alpha1 = -a32 / (4 * a21);
  pp.beta1 = (Rational(t.a11) - Rational(t.a22) - a33) / (2 * a21);
  pp.gamma1 = (4 * b2 - b1 * b1) / (4 * a21 * a32);
  pp.alpha2 = a32 * a21 / (4 * b3);
  pp.beta2 = -b2 / (2 * b3);
  pp.gamma2 = (b2 * b2 - 4 * b1 * b3) / (4 * a21 * a32 * b3);
  return pp;
}

NrsRegionTest asymptotic_nrs_test(const ParabolaPair& pp, const Int& m, const Int& n,
                                  const Rational& eps) {
  Rational p1 = pp.p1(Rational(m), Rational(n));
  Rational p2 = pp.p2(Rational(m), Rational(n));
  auto both = [&](const Rational& e) {
    return (p1 <= -e && p2 <= -e) || (p1 >= e && p2 >= e);
  };
  if (both(eps)) return NrsRegionTest::InsideShrunk;
  if (!both(-eps)) return NrsRegionTest::OutsideGrown;
  return NrsRegionTest::Boundary;
}

NrsRegionTest asymptotic_nrs_test(const HessenbergType& t, const Vec3Z& v, const Int& m,
                                  const Int& n, const Rational& eps) {
  return asymptotic_nrs_test(parabola_coefficients(t, v), m, n, eps);
}

namespace {

// symbolic characteristic coefficients of H_Omega^v(m,n) over Q[m,n]
struct SymbolicCharPoly {
  BiPoly b1, b2, b3;
};

SymbolicCharPoly symbolic_charpoly(const HessenbergType& t, const Vec3Z& v) {
  BiPoly m = BiPoly::var_m(), n = BiPoly::var_n();
  auto cst = [](const Int& k) { return BiPoly::constant(Rational(k)); };
  // entries of the family matrix
  BiPoly a11 = cst(t.a11), a12 = cst(t.a12), a21 = cst(t.a21), a22 = cst(t.a22),
         a32 = cst(t.a32);
  BiPoly a13 = a11 * m + a12 * n + cst(v.x);
  BiPoly a23 = a21 * m + a22 * n + cst(v.y);
  BiPoly a33 = a32 * n + cst(v.z);

  SymbolicCharPoly out;
  out.b1 = a11 + a22 + a33;
  out.b2 = (a22 * a33 - a23 * a32) + a11 * a33 + (a11 * a22 - a12 * a21);
  out.b3 = a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33) + a13 * (a21 * a32);
  return out;
}

}  // namespace

BiPoly delta_polynomial(const HessenbergType& t, const Vec3Z& v) {
  auto [b1, b2, b3] = symbolic_charpoly(t, v);
  BiPoly d = b1 * b2 * b3 * Rational(18) - b1 * b1 * b1 * b3 * Rational(4) +
             b1 * b1 * b2 * b2 - b2 * b2 * b2 * Rational(4) - b3 * b3 * Rational(27);
  if (d.total_degree() > 4) throw Error("delta polynomial degree exceeds 4");
  return d;
}

ParabolaIdentity parabola_identity_check(const HessenbergType& t, const Vec3Z& v) {
  BiPoly delta = delta_polynomial(t, v);
  ParabolaPair pp = parabola_coefficients(t, v);
  CharPoly cp = charpoly_coeffs(family_matrix(t, v, 0, 0));
  Rational scale = Rational(16) * Rational(t.a21 * t.a21) * Rational(t.a32 * t.a32) *
                   Rational(cp.b3);
  BiPoly q = pp.p1_poly() * pp.p2_poly() * scale;
  for (int s : {+1, -1}) {
    BiPoly residual = delta - q * Rational(s);
    if (residual.total_degree() <= 2) return {s, residual};
  }
  throw NoFactorization("no sign makes delta - s*16*a21^2*a32^2*b3*p1*p2 quadratic for " +
                        t.to_text());
}

Normalization normalization(const HessenbergType& t, const Vec3Z& v) {
  if (t.a21 == 0 || t.a32 == 0) throw DegenerateType("a21 and a32 must be nonzero");
  Mat3Z h0 = family_matrix(t, v, 0, 0);
  const Int& a11 = t.a11;
  const Int& a12 = t.a12;
  const Int& a21 = t.a21;
  const Int& a22 = t.a22;
  const Int& a23 = h0.at(1, 2);
  const Int& a32 = t.a32;
  const Int& a33 = h0.at(2, 2);

  Mat3Z xz;
  xz.at(0, 0) = 1; xz.at(0, 1) = a11; xz.at(0, 2) = a11 * a11 + a12 * a21;
  xz.at(1, 0) = 0; xz.at(1, 1) = a21; xz.at(1, 2) = a11 * a21 + a21 * a22;
  xz.at(2, 0) = 0; xz.at(2, 1) = 0;  xz.at(2, 2) = a21 * a32;

  Normalization nz;
  nz.x = Mat3Q::from(xz);
  nz.lin_mm = a21 * a32;
  nz.lin_mn = -a11 * a32;
  nz.const_m = a23 * a32 - a11 * a33 + a12 * a21 - a22 * a33 - a11 * a22;
  nz.lin_nn = a32;
  nz.const_n = a11 + a22 + a33;
  return nz;
}

std::pair<Int, Int> Normalization::apply(const Int& m, const Int& n) const {
  return {lin_mm * m + lin_mn * n + const_m, lin_nn * n + const_n};
}

RayLeadingCoefficient ray_leading_coefficient_check(const HessenbergType& t, const Vec3Z& v,
                                                    const Rational& eps) {
  ParabolaPair pp = parabola_coefficients(t, v);
  // m(t) = -p1(0, t) + eps = alpha1 t^2 + beta1 t + gamma1 + eps
  UniPoly mt;
  mt.c = {pp.gamma1 + eps, pp.beta1, pp.alpha1};
  mt.trim();
  UniPoly nt = UniPoly::monomial(1, Rational(1));
  UniPoly d = delta_polynomial(t, v).substitute(mt, nt);
  Rational expected = Rational(t.a21) * Rational(t.a32 * t.a32) * Rational(t.a32 * t.a32) *
                      Rational(t.a32) * eps / 4;
  bool ok = d.degree() == 4 && d.coeff(4) == expected;
  return {ok, d.degree(), d.coeff(4)};
}

}  // namespace sl3
