#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sl3reduce/mat3.hpp"

namespace sl3 {

// Univariate polynomial over the rationals, coefficients by ascending degree.
struct UniPoly {
  std::vector<Rational> c;

  UniPoly() = default;
  explicit UniPoly(Rational constant) : c{std::move(constant)} { trim(); }
  static UniPoly monomial(int deg, Rational coeff);

  void trim();
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  Rational coeff(int deg) const;
  Rational leading() const;

  UniPoly operator+(const UniPoly&) const;
  UniPoly operator-(const UniPoly&) const;
  UniPoly operator*(const UniPoly&) const;
  bool operator==(const UniPoly&) const = default;

  Rational eval(const Rational& t) const;
};

// Exact bivariate polynomial in (m, n) with rational coefficients.
// Keys are exponent pairs (i, j) for m^i n^j; zero coefficients never stored.
struct BiPoly {
  std::map<std::pair<int, int>, Rational> coeff;

  BiPoly() = default;
  static BiPoly constant(Rational c);
  static BiPoly monomial(int i, int j, Rational c);
  static BiPoly var_m() { return monomial(1, 0, Rational(1)); }
  static BiPoly var_n() { return monomial(0, 1, Rational(1)); }

  bool is_zero() const { return coeff.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  Rational get(int i, int j) const;
  void set(int i, int j, Rational c);

  BiPoly operator+(const BiPoly&) const;
  BiPoly operator-(const BiPoly&) const;
  BiPoly operator*(const BiPoly&) const;
  BiPoly operator*(const Rational& k) const;
  BiPoly operator-() const;
  bool operator==(const BiPoly&) const = default;

  Rational eval(const Rational& m, const Rational& n) const;
  Int eval_int(const Int& m, const Int& n) const;  // requires integer coefficients

  // Substitute m <- pm(t), n <- pn(t).
  UniPoly substitute(const UniPoly& pm, const UniPoly& pn) const;

  std::string to_text() const;  // human-readable, deterministic
};

}  // namespace sl3
