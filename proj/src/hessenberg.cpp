#include "sl3reduce/hessenberg.hpp"

#include <optional>
#include <vector>

#include "sl3reduce/cubic_form.hpp"

namespace sl3 {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw Error(std::string("internal invariant violated: ") + what);
}

int sign_of(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

// minimal non-negative a23 with c2*a23 + c3*a33 = t, a33 >= 0; nullopt if none
std::optional<std::pair<Int, Int>> solve_pair_nonneg(const Int& c2, const Int& c3, const Int& t) {
  if (c2 == 0 && c3 == 0) {
    if (t == 0) return std::make_pair(Int(0), Int(0));
    return std::nullopt;
  }
  if (c2 == 0) {
    if (t % c3 != 0) return std::nullopt;
    Int a33 = t / c3;
    if (a33 < 0) return std::nullopt;
    return std::make_pair(Int(0), a33);
  }
  if (c3 == 0) {
    if (t % c2 != 0) return std::nullopt;
    Int a23 = t / c2;
    if (a23 < 0) return std::nullopt;
    return std::make_pair(a23, Int(0));
  }
  // congruence c2 * a23 == t (mod |c3|); solutions form one class mod p
  Int g = gcd(c2, c3);
  if (t % g != 0) return std::nullopt;
  Int c3a = abs_int(c3);
  Int p = c3a / g;
  // minimal non-negative residue solving the congruence
  Int a0(-1);
  for (Int a = 0; a < p; ++a) {
    if ((t - c2 * a) % c3a == 0) {
      a0 = a;
      break;
    }
  }
  check(a0 >= 0, "congruence class exists");
  Int b0 = (t - c2 * a0) / c3;            // a33 at a23 = a0
  Int slope = -(c2 * p) / c3;             // a33 step per +p in a23 (exact)
  if (b0 >= 0) return std::make_pair(a0, b0);
  if (slope <= 0) return std::nullopt;    // a33 only decreases along the ray
  Int k, r;
  fdiv_qr(-b0 + slope - 1, slope, k, r);  // ceil((-b0)/slope)
  return std::make_pair(a0 + k * p, b0 + k * slope);
}

// coefficients (x, y) of r = x*p + y*q inside the plane with normal n0
std::pair<Int, Int> plane_coords(const Vec3Z& p, const Vec3Z& q, const Vec3Z& r, const Vec3Z& n0) {
  Int den = p.cross(q).dot(n0);
  check(den != 0, "plane basis is independent");
  Int xn = r.cross(q).dot(n0);
  Int yn = p.cross(r).dot(n0);
  check(xn % den == 0 && yn % den == 0, "plane coordinates are integral");
  return {xn / den, yn / den};
}

}  // namespace

bool HessenbergType::operator<(const HessenbergType& o) const {
  if (a11 != o.a11) return a11 < o.a11;
  if (a21 != o.a21) return a21 < o.a21;
  if (a12 != o.a12) return a12 < o.a12;
  if (a22 != o.a22) return a22 < o.a22;
  return a32 < o.a32;
}

std::string HessenbergType::to_text() const {
  return a11.get_str() + "," + a21.get_str() + "|" + a12.get_str() + "," +
         a22.get_str() + "," + a32.get_str();
}

HessenbergType HessenbergType::from_text(const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos) throw ParseError("type must be 'a11,a21|a12,a22,a32'");
  std::string left = s.substr(0, bar), right = s.substr(bar + 1);
  auto comma = left.find(',');
  if (comma == std::string::npos) throw ParseError("bad type text '" + s + "'");
  Vec3Z r = Vec3Z::from_text(right);
  try {
    return {Int(left.substr(0, comma), 10), Int(left.substr(comma + 1), 10), r.x, r.y, r.z};
  } catch (const std::invalid_argument&) {
    throw ParseError("bad type text '" + s + "'");
  }
}

Int complexity(const HessenbergType& t) {
  if (t.a21 == 0 || t.a32 == 0) throw DegenerateType("a21 and a32 must be nonzero");
  return t.a21 * t.a21 * t.a32;
}

std::pair<HessenbergType, bool> type_of(const Mat3Z& m) {
  if (m.at(2, 0) != 0) throw NotHessenberg("entry (3,1) is nonzero");
  HessenbergType t{m.at(0, 0), m.at(1, 0), m.at(0, 1), m.at(1, 1), m.at(2, 1)};
  bool perfect = t.is_perfect();
  return {std::move(t), perfect};
}

Vec3Z complete_type(const HessenbergType& t) {
  if (t.a21 == 0 || t.a32 == 0) throw DegenerateType("a21 and a32 must be nonzero");
  // det = a13*c1 + a23*c2 + a33*c3 with the third-column cofactors:
  Int c1 = t.a21 * t.a32;
  Int c2 = -t.a11 * t.a32;
  Int c3 = t.a11 * t.a22 - t.a12 * t.a21;
  if (gcd(gcd(c1, c2), c3) != 1)
    throw NoUnimodularCompletion("cofactors of " + t.to_text() + " have a common factor");

  // lexicographically smallest non-negative solution; always exists for
  // perfect types (c1 > 0, c2 <= 0, and c3 <= 0 whenever c2 = 0)
  Int cap = abs_int(c2) + abs_int(c3) + abs_int(c2 * c3) + 2;
  for (Int a13 = 0; a13 <= cap; ++a13) {
    auto rest = solve_pair_nonneg(c2, c3, 1 - c1 * a13);
    if (rest) return {a13, rest->first, rest->second};
  }
  // mixed-sign fallback for non-perfect types
  Int g12, x1, y1;
  mpz_gcdext(g12.get_mpz_t(), x1.get_mpz_t(), y1.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
  Int g, x2, z2;
  mpz_gcdext(g.get_mpz_t(), x2.get_mpz_t(), z2.get_mpz_t(), g12.get_mpz_t(), c3.get_mpz_t());
  check(g == 1, "extended gcd of coprime cofactors");
  return {x1 * x2, y1 * x2, z2};
}

Mat3Z family_matrix(const HessenbergType& t, const Vec3Z& v, const Int& m, const Int& n) {
  Mat3Z h;
  h.at(0, 0) = t.a11;
  h.at(1, 0) = t.a21;
  h.at(2, 0) = 0;
  h.at(0, 1) = t.a12;
  h.at(1, 1) = t.a22;
  h.at(2, 1) = t.a32;
  h.at(0, 2) = t.a11 * m + t.a12 * n + v.x;
  h.at(1, 2) = t.a21 * m + t.a22 * n + v.y;
  h.at(2, 2) = t.a32 * n + v.z;
  return h;
}

Mat3Z family_matrix(const FamilyPoint& pt) {
  return family_matrix(pt.type, pt.v, pt.m, pt.n);
}

std::pair<Int, Int> ray_point(const RaySpec& r, const Int& t) {
  if (t < 0) throw Error("ray parameter must be non-negative");
  if (r.index == 1) return {r.base_m - t, r.base_n};
  if (r.index == 2) return {r.base_m + r.type.a11 * t, r.base_n + r.type.a21 * t};
  throw Error("ray index must be 1 or 2");
}

Mat3Z ray_matrix(const RaySpec& r, const Int& t) {
  auto [m, n] = ray_point(r, t);
  return family_matrix(r.type, r.v, m, n);
}

PerfectReduction reduce_to_perfect_with_basis(const Mat3Z& m, const Vec3Z& w,
                                              const CompletionPerturbation& tweak) {
  if (m.det() != 1) throw NotUnimodular("reduction requires det = 1");
  if (!w.is_primitive()) throw NotPrimitive("seed vector " + w.to_text() + " is not primitive");
  {
    CharPoly cp = charpoly_coeffs(m);
    if (cp.b1 == cp.b2 || cp.b1 + cp.b2 == -2)
      throw ReduciblePolynomial("characteristic polynomial has a rational root");
  }

  const Vec3Z e1 = w;
  const Vec3Z av = m * e1;

  // primitive normal of the plane spanned by w, Mw
  Vec3Z cr = e1.cross(av);
  if (cr.is_zero()) throw ReduciblePolynomial("w is an eigenvector");
  Vec3Z n0 = cr.primitive_part();

  // basis (k1, k2) of the rank-2 lattice {u : n0 . u = 0}
  Vec3Z k1, k2;
  if (n0.x == 0 && n0.y == 0) {
    k1 = {1, 0, 0};
    k2 = {0, 1, 0};
  } else {
    Int g1, x1, y1;
    mpz_gcdext(g1.get_mpz_t(), x1.get_mpz_t(), y1.get_mpz_t(), n0.x.get_mpz_t(),
               n0.y.get_mpz_t());
    k1 = {n0.y / g1, -n0.x / g1, 0};
    k2 = {-n0.z * x1, -n0.z * y1, g1};
  }
  {
    Vec3Z kk = k1.cross(k2);
    check(kk == n0 || kk == -n0, "plane basis spans the saturated lattice");
  }

  // complete e1 to a basis of the plane lattice
  auto [alpha, beta] = plane_coords(k1, k2, e1, n0);
  check(gcd(alpha, beta) == 1, "seed is primitive in the plane lattice");
  Int gg, uu, vv;
  mpz_gcdext(gg.get_mpz_t(), vv.get_mpz_t(), uu.get_mpz_t(), alpha.get_mpz_t(),
             beta.get_mpz_t());
  // alpha*vv + beta*uu = 1; pick g2 with det[(alpha,beta),(g2 coords)] = 1
  Vec3Z g2 = k1 * (-uu) + k2 * vv;
  if (tweak.g2_flip) g2 = -g2;
  if (tweak.g2_shear) g2 = g2 + e1 * Int(tweak.g2_shear);

  // A(e1) = q11 e1 + a21 g2
  auto [q11, a21] = plane_coords(e1, g2, av, n0);
  check(e1 * q11 + g2 * a21 == av, "step-2 decomposition");
  if (a21 == 0) throw ReduciblePolynomial("invariant line detected in step 2");
  Int b11, a11;
  fdiv_qr(q11, a21, b11, a11);
  Vec3Z e2 = g2 * Int(sign_of(a21)) + e1 * b11;

  // complete {e1, e2} to a basis of Z^3 via the primitive normal
  Vec3Z n1 = e1.cross(e2);
  check(n1 == n0 || n1 == -n0, "plane normal is stable under step 2");
  Int gA, xA, yA;
  mpz_gcdext(gA.get_mpz_t(), xA.get_mpz_t(), yA.get_mpz_t(), n1.x.get_mpz_t(),
             n1.y.get_mpz_t());
  Int gB, xB, zB;
  mpz_gcdext(gB.get_mpz_t(), xB.get_mpz_t(), zB.get_mpz_t(), gA.get_mpz_t(),
             n1.z.get_mpz_t());
  check(gB == 1, "normal is primitive");
  Vec3Z g3{xA * xB, yA * xB, zB};
  check(n1.dot(g3) == 1, "step-3 completion");
  if (tweak.g3_flip) g3 = -g3;
  if (tweak.g3_shear1) g3 = g3 + e1 * Int(tweak.g3_shear1);
  if (tweak.g3_shear2) g3 = g3 + e2 * Int(tweak.g3_shear2);

  // A(e2) = q12 e1 + q22 e2 + a32 g3
  Vec3Z ae2 = m * e2;
  Mat3Z b0 = Mat3Z::from_columns(e1, e2, g3);
  Int d0 = b0.det();
  check(d0 == 1 || d0 == -1, "step-3 basis is unimodular");
  Vec3Z coords = b0.adjugate() * ae2;
  if (d0 == -1) coords = -coords;
  const Int& q12 = coords.x;
  const Int& q22 = coords.y;
  const Int& a32 = coords.z;
  if (a32 == 0) throw ReduciblePolynomial("invariant plane detected in step 3");
  Int b12, a12, b22, a22;
  fdiv_qr(q12, a32, b12, a12);
  fdiv_qr(q22, a32, b22, a22);
  Vec3Z e3 = e1 * b12 + e2 * b22 + g3 * Int(sign_of(a32));

  Mat3Z basis = Mat3Z::from_columns(e1, e2, e3);
  Int db = basis.det();
  check(db == 1 || db == -1, "output basis is unimodular");
  Mat3Z inv = basis.adjugate();
  if (db == -1) inv = inv * Int(-1);
  Mat3Z h = inv * m * basis;

  auto [ht, perfect] = type_of(h);
  check(perfect, "output is perfect Hessenberg");
  check(complexity(ht) == md_characteristic(m, w), "complexity equals the MD-characteristic");
  return {std::move(h), std::move(basis)};
}

Mat3Z reduce_to_perfect(const Mat3Z& m, const Vec3Z& w) {
  return reduce_to_perfect_with_basis(m, w).result;
}

}  // namespace sl3
