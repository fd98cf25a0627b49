#pragma once

#include <array>
#include <string>

#include "sl3reduce/mat3.hpp"

namespace sl3 {

// Homogeneous integer cubic in (x, y, z).  Coefficient order:
// x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3.
struct CubicForm {
  std::array<Int, 10> c{};

  bool operator==(const CubicForm&) const = default;
  Int eval(const Vec3Z& w) const;
  Int max_abs_coeff() const;
  std::string to_text() const;
};

// F_M(w) = det(w, Mw, M^2 w), expanded symbolically.
CubicForm cubic_form(const Mat3Z& m);

// MD-characteristic: |F_M(w)|, the unoriented volume of the parallelepiped
// spanned by w, Mw, M^2 w.
Int md_characteristic(const Mat3Z& m, const Vec3Z& w);
Int md_characteristic(const CubicForm& f, const Vec3Z& w);

}  // namespace sl3
