#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sl3reduce/cubic_form.hpp"
#include "sl3reduce/hessenberg.hpp"
#include "sl3reduce/spectra.hpp"
#include "test_support.hpp"

using namespace sl3;

TEST_CASE("complexity") {
  CHECK(complexity(HessenbergType::from_text("0,1|0,0,1")) == 1);
  CHECK(complexity(HessenbergType::from_text("0,1|1,0,2")) == 2);
  CHECK(complexity(HessenbergType::from_text("1,2|1,1,3")) == 12);
  CHECK_THROWS_AS(complexity(HessenbergType{0, 0, 0, 0, 1}), DegenerateType);
}

TEST_CASE("type extraction") {
  auto [t1, p1] = type_of(Mat3Z::from_text("0,0,1;1,0,1;0,1,3"));
  CHECK(t1 == HessenbergType::from_text("0,1|0,0,1"));
  CHECK(p1);

  auto [t2, p2] = type_of(Mat3Z::from_text("0,1,1;1,0,0;0,2,1"));
  CHECK(t2 == HessenbergType::from_text("0,1|1,0,2"));
  CHECK(p2);

  auto [t3, p3] = type_of(Mat3Z::from_text("2,0,1;1,0,0;0,1,0"));
  CHECK(t3 == HessenbergType::from_text("2,1|0,0,1"));
  CHECK_FALSE(p3);

  CHECK_THROWS_AS(type_of(Mat3Z::from_text("1,0,0;0,1,0;1,0,1")), NotHessenberg);
}

TEST_CASE("type completion") {
  HessenbergType omega0 = HessenbergType::from_text("0,1|0,0,1");
  CHECK(complete_type(omega0) == Vec3Z(1, 0, 0));
  CHECK(family_matrix(omega0, complete_type(omega0), Int(0), Int(0)).det() == 1);

  HessenbergType t102 = HessenbergType::from_text("0,1|1,0,2");
  CHECK(complete_type(t102) == Vec3Z(1, 0, 1));
  CHECK(family_matrix(t102, complete_type(t102), Int(0), Int(0)).det() == 1);

  CHECK_THROWS_AS(complete_type(HessenbergType::from_text("2,2|0,0,2")),
                  NoUnimodularCompletion);

  // every completion below complexity 5 is unimodular at (0,0)
  for (const char* tt : {"0,1|1,1,2", "0,1|1,2,3", "1,2|0,0,1", "0,1|3,3,4", "1,2|1,1,3"}) {
    HessenbergType t = HessenbergType::from_text(tt);
    Vec3Z v = complete_type(t);
    CHECK(family_matrix(t, v, Int(0), Int(0)).det() == 1);
    CHECK(v.x >= 0);
    CHECK(v.y >= 0);
    CHECK(v.z >= 0);
  }
}

TEST_CASE("family matrices") {
  HessenbergType omega0 = HessenbergType::from_text("0,1|0,0,1");
  for (long m : {-4L, 0L, 9L})
    for (long n : {-7L, 0L, 3L}) {
      Mat3Z h = family_matrix(omega0, Vec3Z(1, 0, 0), Int(m), Int(n));
      CHECK(h == Mat3Z::from_text("0,0,1;1,0," + std::to_string(m) + ";0,1," +
                                  std::to_string(n)));
    }

  // paper display for <0,1|1,0,2> with v = (1,0,1)
  HessenbergType t102 = HessenbergType::from_text("0,1|1,0,2");
  for (long m : {-2L, 5L})
    for (long n : {0L, 4L}) {
      Mat3Z h = family_matrix(t102, Vec3Z(1, 0, 1), Int(m), Int(n));
      CHECK(h == Mat3Z::from_text("0,1," + std::to_string(n + 1) + ";1,0," +
                                  std::to_string(m) + ";0,2," + std::to_string(2 * n + 1)));
    }

  // determinant is 1 across a full window
  HessenbergType t = HessenbergType::from_text("1,2|1,1,3");
  Vec3Z v = complete_type(t);
  for (long m = -20; m <= 20; ++m)
    for (long n = -20; n <= 20; ++n)
      CHECK(family_matrix(t, v, Int(m), Int(n)).det() == 1);
}

TEST_CASE("ray matrices") {
  HessenbergType t = HessenbergType::from_text("1,2|1,1,3");
  Vec3Z v(0, 0, -1);
  CHECK(family_matrix(t, v, Int(0), Int(0)).det() == 1);

  RaySpec r1{t, v, Int(3), Int(-2), 1};
  CHECK(ray_matrix(r1, Int(0)) == family_matrix(t, v, Int(3), Int(-2)));
  CHECK(ray_matrix(r1, Int(5)) == family_matrix(t, v, Int(-2), Int(-2)));

  RaySpec r2{HessenbergType::from_text("0,1|0,0,1"), Vec3Z(1, 0, 0), Int(0), Int(0), 2};
  CHECK(ray_matrix(r2, Int(5)) == family_matrix(r2.type, r2.v, Int(0), Int(5)));

  // paper's ray R^{-2,-1}_{2,<1,2|1,1,3>}: direction (a11, a21) = (1, 2)
  RaySpec r3{t, v, Int(-2), Int(-1), 2};
  CHECK(ray_matrix(r3, Int(1)) == family_matrix(t, v, Int(-1), Int(1)));
}

TEST_CASE("reduction to perfect form is the identity on perfect NRS matrices") {
  HessenbergType omega0 = HessenbergType::from_text("0,1|0,0,1");
  Vec3Z v(1, 0, 0);
  Vec3Z e1(1, 0, 0);
  long checked = 0;
  for (long m = -20; m <= 20; ++m)
    for (long n = -20; n <= 20; ++n) {
      Mat3Z h = family_matrix(omega0, v, Int(m), Int(n));
      CharPoly cp = charpoly_coeffs(h);
      if (spectrum_class(cp) != SpectrumClass::NRS) continue;
      CHECK(reduce_to_perfect(h, e1) == h);
      ++checked;
    }
  CHECK(checked > 400);
}

TEST_CASE("reduction example from the Klein-Voronoi section") {
  Mat3Z m = Mat3Z::from_text("0,0,1;1,0,1;0,1,3");
  Mat3Z h = reduce_to_perfect(m, Vec3Z(0, 1, 0));
  auto [t, perfect] = type_of(h);
  CHECK(perfect);
  CHECK(t == HessenbergType::from_text("0,1|0,0,1"));
  CHECK(complexity(t) == 1);
}

TEST_CASE("reduction rejects bad inputs") {
  Mat3Z m = Mat3Z::from_text("0,0,1;1,0,1;0,1,3");
  CHECK_THROWS_AS(reduce_to_perfect(m, Vec3Z(2, 0, 0)), NotPrimitive);
  CHECK_THROWS_AS(reduce_to_perfect(m, Vec3Z(0, 0, 0)), NotPrimitive);
  // b1 = b2 = 3 has the rational root 1
  Mat3Z red = family_matrix(HessenbergType::from_text("0,1|0,0,1"), Vec3Z(1, 0, 0), Int(-3),
                            Int(3));
  CHECK_THROWS_AS(reduce_to_perfect(red, Vec3Z(1, 0, 0)), ReduciblePolynomial);
}

TEST_CASE("reduction postconditions") {
  test::Rng rng(2001);
  std::uniform_int_distribution<long> wd(-6, 6);
  Mat3Z base = Mat3Z::from_text("0,0,1;1,0,1;0,1,3");
  for (int trial = 0; trial < 40; ++trial) {
    Mat3Z x = test::random_unimodular(rng);
    Mat3Z m = x * base * unimodular_inverse(x);
    Vec3Z w{Int(wd(rng)), Int(wd(rng)), Int(wd(rng))};
    if (w.is_zero()) continue;
    w = w.primitive_part();
    PerfectReduction pr = reduce_to_perfect_with_basis(m, w);
    CHECK(pr.basis.column(0) == w);
    Int db = pr.basis.det();
    CHECK((db == 1 || db == -1));
    CHECK(unimodular_inverse(pr.basis) * m * pr.basis == pr.result);
    CHECK(type_of(pr.result).first.is_perfect());
    CHECK(complexity(type_of(pr.result).first) == md_characteristic(m, w));
  }
}

TEST_CASE("reduction is invariant under completion choices") {
  test::Rng rng(2002);
  std::uniform_int_distribution<long> sh(-5, 5), fl(0, 1), wd(-4, 4);
  Mat3Z base = Mat3Z::from_text("0,0,1;1,0,1;0,1,3");
  for (int mat_trial = 0; mat_trial < 4; ++mat_trial) {
    Mat3Z x = test::random_unimodular(rng);
    Mat3Z m = x * base * unimodular_inverse(x);
    Vec3Z w{Int(wd(rng)), Int(wd(rng)), Int(1)};
    w = w.primitive_part();
    Mat3Z expected = reduce_to_perfect(m, w);
    for (int trial = 0; trial < 50; ++trial) {
      CompletionPerturbation tw;
      tw.g2_shear = sh(rng);
      tw.g2_flip = fl(rng);
      tw.g3_shear1 = sh(rng);
      tw.g3_shear2 = sh(rng);
      tw.g3_flip = fl(rng);
      CHECK(reduce_to_perfect_with_basis(m, w, tw).result == expected);
    }
  }
}

TEST_CASE("reduction is conjugation equivariant") {
  test::Rng rng(2003);
  Mat3Z m = Mat3Z::from_text("0,1,1;1,0,-2;0,2,1");
  REQUIRE(m.det() == 1);
  Vec3Z w(1, -2, 3);
  Mat3Z lhs = reduce_to_perfect(m, w);
  for (int i = 0; i < 20; ++i) {
    Mat3Z x = test::random_unimodular(rng);
    CHECK(reduce_to_perfect(x * m * unimodular_inverse(x), x * w) == lhs);
  }
}

TEST_CASE("type text round trip") {
  HessenbergType t = HessenbergType::from_text("1,2|1,1,3");
  CHECK(t.to_text() == "1,2|1,1,3");
  CHECK_THROWS_AS(HessenbergType::from_text("1,2,3"), ParseError);
}
