#include "sl3reduce/cubic_form.hpp"

#include <sstream>

namespace sl3 {

namespace {

// quadratic form coefficients: xx, xy, xz, yy, yz, zz
struct Quad {
  std::array<Int, 6> q{};
};

// (a . w)(b . w) as a quadratic form
Quad lin_product(const Vec3Z& a, const Vec3Z& b) {
  Quad r;
  r.q[0] = a.x * b.x;
  r.q[1] = a.x * b.y + a.y * b.x;
  r.q[2] = a.x * b.z + a.z * b.x;
  r.q[3] = a.y * b.y;
  r.q[4] = a.y * b.z + a.z * b.y;
  r.q[5] = a.z * b.z;
  return r;
}

void add_scaled(Quad& acc, const Quad& q, int sign) {
  for (int i = 0; i < 6; ++i) acc.q[i] += sign > 0 ? q.q[i] : -q.q[i];
}

// accumulate var * Q into the cubic, var in {0:x, 1:y, 2:z}
void accumulate(CubicForm& f, int var, const Quad& q) {
  static constexpr int idx[3][6] = {
      {0, 1, 2, 3, 4, 5},  // x * {xx,xy,xz,yy,yz,zz}
      {1, 3, 4, 6, 7, 8},  // y * ...
      {2, 4, 5, 7, 8, 9},  // z * ...
  };
  for (int i = 0; i < 6; ++i) f.c[idx[var][i]] += q.q[i];
}

}  // namespace

Int CubicForm::eval(const Vec3Z& w) const {
  const Int& x = w.x;
  const Int& y = w.y;
  const Int& z = w.z;
  Int a0 = ((c[0] * x + c[1] * y) * x + c[3] * y * y) * x + c[6] * y * y * y;
  Int a1 = c[2] * x * x + c[4] * x * y + c[7] * y * y;
  Int a2 = c[5] * x + c[8] * y;
  return ((c[9] * z + a2) * z + a1) * z + a0;
}

Int CubicForm::max_abs_coeff() const {
  Int m(0);
  for (const Int& v : c) {
    Int a = abs_int(v);
    if (a > m) m = a;
  }
  return m;
}

std::string CubicForm::to_text() const {
  static const char* names[10] = {"x^3", "x^2y", "x^2z", "xy^2", "xyz",
                                  "xz^2", "y^3", "y^2z", "yz^2", "z^3"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 10; ++i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c[i].get_str() << "*" << names[i];
  }
  if (first) os << "0";
  return os.str();
}

CubicForm cubic_form(const Mat3Z& m) {
  Mat3Z m2 = m * m;
  // F(w) = w . (Mw x M^2 w); rows of M and M^2 are the component linear forms
  Vec3Z l0 = m.row(0), l1 = m.row(1), l2 = m.row(2);
  Vec3Z k0 = m2.row(0), k1 = m2.row(1), k2 = m2.row(2);

  Quad q0, q1, q2;  // components of Mw x M^2 w
  add_scaled(q0, lin_product(l1, k2), +1);
  add_scaled(q0, lin_product(l2, k1), -1);
  add_scaled(q1, lin_product(l2, k0), +1);
  add_scaled(q1, lin_product(l0, k2), -1);
  add_scaled(q2, lin_product(l0, k1), +1);
  add_scaled(q2, lin_product(l1, k0), -1);

  CubicForm f;
  accumulate(f, 0, q0);
  accumulate(f, 1, q1);
  accumulate(f, 2, q2);
  return f;
}

Int md_characteristic(const Mat3Z& m, const Vec3Z& w) {
  return md_characteristic(cubic_form(m), w);
}

Int md_characteristic(const CubicForm& f, const Vec3Z& w) {
  return abs_int(f.eval(w));
}

}  // namespace sl3
