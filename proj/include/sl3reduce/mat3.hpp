#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "sl3reduce/errors.hpp"

namespace sl3 {

// Arbitrary-precision scalars. Everything exact in this library runs on these.
using Int = mpz_class;
using Rational = mpq_class;

Int gcd(const Int& a, const Int& b);
Int abs_int(const Int& a);
// Floor division with remainder in [0, |d|); d must be nonzero.
void fdiv_qr(const Int& n, const Int& d, Int& q, Int& r);

struct Vec3Z {
  Int x{0}, y{0}, z{0};

  Vec3Z() = default;
  Vec3Z(Int xx, Int yy, Int zz) : x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {}

  bool operator==(const Vec3Z&) const = default;
  // lexicographic; used for canonical ordering of witness lists
  bool operator<(const Vec3Z& o) const;

  Vec3Z operator+(const Vec3Z& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3Z operator-(const Vec3Z& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3Z operator-() const { return {-x, -y, -z}; }
  Vec3Z operator*(const Int& k) const { return {x * k, y * k, z * k}; }

  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
  Int norm_inf() const;
  Int content() const;  // gcd of the coordinates (0 for the zero vector)
  bool is_primitive() const { return content() == 1; }
  Vec3Z primitive_part() const;  // divides out the content; zero stays zero

  Int dot(const Vec3Z& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3Z cross(const Vec3Z& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }

  std::string to_text() const;  // "x,y,z"
  static Vec3Z from_text(const std::string&);
};

struct Mat3Z {
  std::array<Int, 9> a{};  // row-major

  Int& at(int i, int j) { return a[3 * i + j]; }
  const Int& at(int i, int j) const { return a[3 * i + j]; }

  static Mat3Z identity();
  static Mat3Z from_columns(const Vec3Z& c0, const Vec3Z& c1, const Vec3Z& c2);
  Vec3Z column(int j) const { return {at(0, j), at(1, j), at(2, j)}; }
  Vec3Z row(int i) const { return {at(i, 0), at(i, 1), at(i, 2)}; }

  bool operator==(const Mat3Z&) const = default;
  bool operator<(const Mat3Z& o) const { return a < o.a; }

  Mat3Z operator*(const Mat3Z& o) const;
  Vec3Z operator*(const Vec3Z& v) const;
  Mat3Z operator+(const Mat3Z& o) const;
  Mat3Z operator-(const Mat3Z& o) const;
  Mat3Z operator*(const Int& k) const;

  Int trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }
  Int det() const;
  Mat3Z transpose() const;
  Mat3Z adjugate() const;  // adj(M) with M * adj(M) = det(M) * I

  std::string to_text() const;  // rows joined by ';', entries by ','
  static Mat3Z from_text(const std::string&);
};

std::ostream& operator<<(std::ostream&, const Vec3Z&);
std::ostream& operator<<(std::ostream&, const Mat3Z&);

// Coefficients (b1, b2, b3) of the characteristic polynomial
// -t^3 + b1 t^2 - b2 t + b3: trace, sum of principal 2x2 minors, determinant.
struct CharPoly {
  Int b1, b2, b3;
  bool operator==(const CharPoly&) const = default;
};
CharPoly charpoly_coeffs(const Mat3Z& m);

// Discriminant of -t^3 + b1 t^2 - b2 t + b3.  Positive iff three distinct
// real roots, negative iff one real root and a complex conjugate pair.
Int discriminant_from_coeffs(const Int& b1, const Int& b2, const Int& b3);
Int discriminant_from_coeffs(const CharPoly& c);

// Exact inverse of a matrix with det = +-1; throws NotUnimodular otherwise.
Mat3Z unimodular_inverse(const Mat3Z& m);

// 3x3 rational matrices; used for the (non-integer) conjugations in spectra.
struct Mat3Q {
  std::array<Rational, 9> a{};

  Rational& at(int i, int j) { return a[3 * i + j]; }
  const Rational& at(int i, int j) const { return a[3 * i + j]; }

  static Mat3Q identity();
  static Mat3Q from(const Mat3Z&);

  bool operator==(const Mat3Q&) const = default;
  Mat3Q operator*(const Mat3Q& o) const;
  Rational det() const;
  Mat3Q inverse() const;  // throws Error on det == 0
};

}  // namespace sl3
