#include "sl3reduce/mat3.hpp"

#include <ostream>
#include <sstream>
#include <vector>

namespace sl3 {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int abs_int(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

void fdiv_qr(const Int& n, const Int& d, Int& q, Int& r) {
  if (d == 0) throw Error("fdiv_qr: zero divisor");
  Int dd = abs_int(d);
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
}

bool Vec3Z::operator<(const Vec3Z& o) const {
  if (x != o.x) return x < o.x;
  if (y != o.y) return y < o.y;
  return z < o.z;
}

Int Vec3Z::norm_inf() const {
  Int m = abs_int(x);
  Int ay = abs_int(y);
  Int az = abs_int(z);
  if (ay > m) m = ay;
  if (az > m) m = az;
  return m;
}

Int Vec3Z::content() const { return gcd(gcd(x, y), z); }

Vec3Z Vec3Z::primitive_part() const {
  Int g = content();
  if (g == 0 || g == 1) return *this;
  return {x / g, y / g, z / g};
}

std::string Vec3Z::to_text() const {
  return x.get_str() + "," + y.get_str() + "," + z.get_str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Int parse_int(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer field");
  try {
    return Int(s, 10);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad integer '" + s + "'");
  }
}

}  // namespace

Vec3Z Vec3Z::from_text(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3) throw ParseError("vector must have 3 entries: '" + s + "'");
  return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2])};
}

Mat3Z Mat3Z::identity() {
  Mat3Z m;
  m.at(0, 0) = 1;
  m.at(1, 1) = 1;
  m.at(2, 2) = 1;
  return m;
}

Mat3Z Mat3Z::from_columns(const Vec3Z& c0, const Vec3Z& c1, const Vec3Z& c2) {
  Mat3Z m;
  m.at(0, 0) = c0.x; m.at(1, 0) = c0.y; m.at(2, 0) = c0.z;
  m.at(0, 1) = c1.x; m.at(1, 1) = c1.y; m.at(2, 1) = c1.z;
  m.at(0, 2) = c2.x; m.at(1, 2) = c2.y; m.at(2, 2) = c2.z;
  return m;
}

Mat3Z Mat3Z::operator*(const Mat3Z& o) const {
  Mat3Z r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Int s = at(i, 0) * o.at(0, j);
      s += at(i, 1) * o.at(1, j);
      s += at(i, 2) * o.at(2, j);
      r.at(i, j) = s;
    }
  return r;
}

Vec3Z Mat3Z::operator*(const Vec3Z& v) const {
  return {at(0, 0) * v.x + at(0, 1) * v.y + at(0, 2) * v.z,
          at(1, 0) * v.x + at(1, 1) * v.y + at(1, 2) * v.z,
          at(2, 0) * v.x + at(2, 1) * v.y + at(2, 2) * v.z};
}

Mat3Z Mat3Z::operator+(const Mat3Z& o) const {
  Mat3Z r;
  for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

Mat3Z Mat3Z::operator-(const Mat3Z& o) const {
  Mat3Z r;
  for (int i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

Mat3Z Mat3Z::operator*(const Int& k) const {
  Mat3Z r;
  for (int i = 0; i < 9; ++i) r.a[i] = a[i] * k;
  return r;
}

Int Mat3Z::det() const {
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

Mat3Z Mat3Z::transpose() const {
  Mat3Z r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
  return r;
}

Mat3Z Mat3Z::adjugate() const {
  Mat3Z r;
  r.at(0, 0) = at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1);
  r.at(0, 1) = at(0, 2) * at(2, 1) - at(0, 1) * at(2, 2);
  r.at(0, 2) = at(0, 1) * at(1, 2) - at(0, 2) * at(1, 1);
  r.at(1, 0) = at(1, 2) * at(2, 0) - at(1, 0) * at(2, 2);
  r.at(1, 1) = at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0);
  r.at(1, 2) = at(0, 2) * at(1, 0) - at(0, 0) * at(1, 2);
  r.at(2, 0) = at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0);
  r.at(2, 1) = at(0, 1) * at(2, 0) - at(0, 0) * at(2, 1);
  r.at(2, 2) = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  return r;
}

std::string Mat3Z::to_text() const {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (i) s += ';';
    for (int j = 0; j < 3; ++j) {
      if (j) s += ',';
      s += at(i, j).get_str();
    }
  }
  return s;
}

Mat3Z Mat3Z::from_text(const std::string& s) {
  auto rows = split(s, ';');
  if (rows.size() != 3) throw ParseError("matrix must have 3 rows: '" + s + "'");
  Mat3Z m;
  for (int i = 0; i < 3; ++i) {
    auto cols = split(rows[i], ',');
    if (cols.size() != 3) throw ParseError("matrix row must have 3 entries: '" + rows[i] + "'");
    for (int j = 0; j < 3; ++j) m.at(i, j) = parse_int(cols[j]);
  }
  return m;
}

std::ostream& operator<<(std::ostream& os, const Vec3Z& v) { return os << v.to_text(); }
std::ostream& operator<<(std::ostream& os, const Mat3Z& m) { return os << m.to_text(); }

CharPoly charpoly_coeffs(const Mat3Z& m) {
  Int b1 = m.trace();
  Int b2 = m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1) +
           m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0) +
           m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  return {std::move(b1), std::move(b2), m.det()};
}

Int discriminant_from_coeffs(const Int& b1, const Int& b2, const Int& b3) {
  return 18 * b1 * b2 * b3 - 4 * b1 * b1 * b1 * b3 + b1 * b1 * b2 * b2 -
         4 * b2 * b2 * b2 - 27 * b3 * b3;
}

Int discriminant_from_coeffs(const CharPoly& c) {
  return discriminant_from_coeffs(c.b1, c.b2, c.b3);
}

Mat3Z unimodular_inverse(const Mat3Z& m) {
  Int d = m.det();
  if (d != 1 && d != -1) throw NotUnimodular("determinant is " + d.get_str());
  Mat3Z adj = m.adjugate();
  if (d == -1) adj = adj * Int(-1);
  return adj;
}

Mat3Q Mat3Q::identity() {
  Mat3Q m;
  m.at(0, 0) = 1;
  m.at(1, 1) = 1;
  m.at(2, 2) = 1;
  return m;
}

Mat3Q Mat3Q::from(const Mat3Z& z) {
  Mat3Q m;
  for (int i = 0; i < 9; ++i) m.a[i] = Rational(z.a[i]);
  return m;
}

Mat3Q Mat3Q::operator*(const Mat3Q& o) const {
  Mat3Q r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = at(i, 0) * o.at(0, j);
      s += at(i, 1) * o.at(1, j);
      s += at(i, 2) * o.at(2, j);
      r.at(i, j) = s;
    }
  return r;
}

Rational Mat3Q::det() const {
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

Mat3Q Mat3Q::inverse() const {
  Rational d = det();
  if (d == 0) throw Error("Mat3Q: singular matrix");
  Mat3Q r;
  r.at(0, 0) = (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) / d;
  r.at(0, 1) = (at(0, 2) * at(2, 1) - at(0, 1) * at(2, 2)) / d;
  r.at(0, 2) = (at(0, 1) * at(1, 2) - at(0, 2) * at(1, 1)) / d;
  r.at(1, 0) = (at(1, 2) * at(2, 0) - at(1, 0) * at(2, 2)) / d;
  r.at(1, 1) = (at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0)) / d;
  r.at(1, 2) = (at(0, 2) * at(1, 0) - at(0, 0) * at(1, 2)) / d;
  r.at(2, 0) = (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0)) / d;
  r.at(2, 1) = (at(0, 1) * at(2, 0) - at(0, 0) * at(2, 1)) / d;
  r.at(2, 2) = (at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0)) / d;
  return r;
}

}  // namespace sl3
