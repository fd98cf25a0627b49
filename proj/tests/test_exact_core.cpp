#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl3reduce/bipoly.hpp"
#include "sl3reduce/cubic_form.hpp"
#include "sl3reduce/hessenberg.hpp"
#include "sl3reduce/mat3.hpp"
#include "test_support.hpp"

using namespace sl3;

namespace {

Mat3Z omega0_matrix(long m, long n) {
  return family_matrix(HessenbergType{0, 1, 0, 0, 1}, Vec3Z(1, 0, 0), Int(m), Int(n));
}

// independent determinant route for the cubic form
Int det_oracle(const Mat3Z& m, const Vec3Z& w) {
  return Mat3Z::from_columns(w, m * w, (m * m) * w).det();
}

}  // namespace

TEST_CASE("charpoly coefficients") {
  CHECK(charpoly_coeffs(Mat3Z::identity()) == CharPoly{3, 3, 1});
  for (long m : {-3L, 0L, 2L, 7L})
    for (long n : {-2L, 0L, 5L})
      CHECK(charpoly_coeffs(omega0_matrix(m, n)) == CharPoly{Int(n), Int(-m), Int(1)});
  CHECK(charpoly_coeffs(Mat3Z::from_text("0,0,1;1,0,1;0,1,3")) == CharPoly{3, -1, 1});
}

TEST_CASE("charpoly is a conjugacy invariant") {
  test::Rng rng(1001);
  for (const char* text : {"0,0,1;1,0,1;0,1,3", "0,1,3;1,0,4;0,2,5"}) {
    Mat3Z m = Mat3Z::from_text(text);
    CharPoly cp = charpoly_coeffs(m);
    for (int i = 0; i < 100; ++i) {
      Mat3Z x = test::random_unimodular(rng);
      CHECK(charpoly_coeffs(x * m * unimodular_inverse(x)) == cp);
    }
  }
}

TEST_CASE("discriminant from coefficients") {
  CHECK(discriminant_from_coeffs(Int(0), Int(0), Int(1)) == -27);
  CHECK(discriminant_from_coeffs(Int(3), Int(-1), Int(1)) == -176);
  CHECK(discriminant_from_coeffs(Int(3), Int(3), Int(1)) == 0);
}

TEST_CASE("discriminant matches the family polynomial on a window") {
  // (m^2-4n)(n^2+4m) - 2mn - 27 for the type <0,1|0,0,1>
  for (long m = -50; m <= 50; m += 5)
    for (long n = -50; n <= 50; n += 5) {
      Int mm(m), nn(n);
      Int expected = (mm * mm - 4 * nn) * (nn * nn + 4 * mm) - 2 * mm * nn - 27;
      CHECK(discriminant_from_coeffs(charpoly_coeffs(omega0_matrix(m, n))) == expected);
    }
}

TEST_CASE("cubic form basics") {
  CHECK(cubic_form(Mat3Z::identity()) == CubicForm{});

  // F(1,0,0) equals the Hessenberg complexity a21^2 a32
  for (const char* type_text : {"0,1|0,0,1", "0,1|1,0,2", "1,2|1,1,3"}) {
    HessenbergType t = HessenbergType::from_text(type_text);
    Vec3Z v = complete_type(t);
    Mat3Z h = family_matrix(t, v, Int(2), Int(-3));
    CHECK(cubic_form(h).eval(Vec3Z(1, 0, 0)) == complexity(t));
  }
}

TEST_CASE("cubic form agrees with the determinant oracle") {
  test::Rng rng(1002);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int trial = 0; trial < 5; ++trial) {
    Mat3Z m;
    for (int i = 0; i < 9; ++i) m.a[i] = Int(d(rng));
    CubicForm f = cubic_form(m);
    for (int i = 0; i < 100; ++i) {
      Vec3Z w{Int(d(rng)), Int(d(rng)), Int(d(rng))};
      CHECK(f.eval(w) == det_oracle(m, w));
    }
  }
  // exhaustive small box for one matrix
  Mat3Z m = Mat3Z::from_text("0,0,1;1,0,1;0,1,3");
  CubicForm f = cubic_form(m);
  for (long x = -5; x <= 5; ++x)
    for (long y = -5; y <= 5; ++y)
      for (long z = -5; z <= 5; ++z) {
        Vec3Z w{Int(x), Int(y), Int(z)};
        CHECK(f.eval(w) == det_oracle(m, w));
      }
}

TEST_CASE("cubic form is homogeneous of degree 3") {
  Mat3Z m = Mat3Z::from_text("0,1,3;1,0,4;0,2,5");
  CubicForm f = cubic_form(m);
  Vec3Z w(2, -1, 3);
  for (long lam : {-3L, -1L, 0L, 2L, 5L})
    CHECK(f.eval(w * Int(lam)) == Int(lam) * Int(lam) * Int(lam) * f.eval(w));
}

TEST_CASE("md characteristic") {
  Mat3Z m = Mat3Z::from_text("0,0,1;1,0,1;0,1,3");
  CHECK(md_characteristic(m, Vec3Z(1, 0, 0)) == 1);
  CHECK(md_characteristic(m, Vec3Z(0, 1, 0)) == 1);

  Vec3Z w(3, -2, 5);
  CHECK(md_characteristic(m, w * Int(2)) == 8 * md_characteristic(m, w));

  // invariance under the operator itself (det = 1)
  test::Rng rng(1003);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int i = 0; i < 50; ++i) {
    Vec3Z u{Int(d(rng)), Int(d(rng)), Int(d(rng))};
    CHECK(md_characteristic(m, m * u) == md_characteristic(m, u));
  }
}

TEST_CASE("unimodular inverse") {
  CHECK(unimodular_inverse(Mat3Z::identity()) == Mat3Z::identity());
  CHECK(unimodular_inverse(Mat3Z::from_text("1,1,0;0,1,0;0,0,1")) ==
        Mat3Z::from_text("1,-1,0;0,1,0;0,0,1"));

  test::Rng rng(1004);
  for (int i = 0; i < 25; ++i) {
    Mat3Z x = test::random_unimodular(rng);
    CHECK(x * unimodular_inverse(x) == Mat3Z::identity());
  }

  Mat3Z two = Mat3Z::identity();
  two.at(0, 0) = 2;
  CHECK_THROWS_AS(unimodular_inverse(two), NotUnimodular);
}

TEST_CASE("vector primitivity") {
  CHECK(Vec3Z(1, 0, 0).is_primitive());
  CHECK(Vec3Z(2, 3, 5).is_primitive());
  CHECK_FALSE(Vec3Z(2, 4, 6).is_primitive());
  CHECK_FALSE(Vec3Z(0, 0, 0).is_primitive());
  CHECK(Vec3Z(2, 4, 6).primitive_part() == Vec3Z(1, 2, 3));
}

namespace {

BiPoly random_bipoly(test::Rng& rng) {
  std::uniform_int_distribution<int> deg(0, 3), num(-6, 6), den(1, 4);
  BiPoly p;
  for (int k = 0; k < 5; ++k) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p = p + BiPoly::monomial(deg(rng), deg(rng), c);
  }
  return p;
}

}  // namespace

TEST_CASE("bipoly ring laws") {
  test::Rng rng(1005);
  for (int i = 0; i < 30; ++i) {
    BiPoly f = random_bipoly(rng), g = random_bipoly(rng), h = random_bipoly(rng);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f * g == g * f);
  }
  // no stored zero coefficients after cancellation
  BiPoly m = BiPoly::var_m();
  CHECK((m - m).is_zero());
}

TEST_CASE("bipoly substitution and evaluation") {
  // p(m,n) = m^2 n - 3 n + 1/2
  BiPoly p = BiPoly::monomial(2, 1, Rational(1)) + BiPoly::monomial(0, 1, Rational(-3)) +
             BiPoly::constant(Rational(1, 2));
  CHECK(p.eval(Rational(2), Rational(3)) == Rational(12 - 9) + Rational(1, 2));

  // m <- t^2, n <- t - 1
  UniPoly pm = UniPoly::monomial(2, Rational(1));
  UniPoly pn = UniPoly::monomial(1, Rational(1)) - UniPoly(Rational(1));
  UniPoly q = p.substitute(pm, pn);
  for (long t : {-2L, 0L, 1L, 3L}) {
    Rational tv(t);
    CHECK(q.eval(tv) == p.eval(tv * tv, tv - 1));
  }
}

TEST_CASE("matrix text round trip") {
  Mat3Z m = Mat3Z::from_text("0,0,1;1,0,-12;0,1,300");
  CHECK(m.to_text() == "0,0,1;1,0,-12;0,1,300");
  CHECK_THROWS_AS(Mat3Z::from_text("1,2;3,4"), ParseError);
  CHECK_THROWS_AS(Vec3Z::from_text("1,x,3"), ParseError);
}
