#include "sl3reduce/bipoly.hpp"

#include <sstream>

namespace sl3 {

UniPoly UniPoly::monomial(int deg, Rational coeff) {
  UniPoly p;
  p.c.assign(deg + 1, Rational(0));
  p.c[deg] = std::move(coeff);
  p.trim();
  return p;
}

void UniPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational UniPoly::coeff(int deg) const {
  if (deg < 0 || deg >= static_cast<int>(c.size())) return Rational(0);
  return c[deg];
}

Rational UniPoly::leading() const {
  if (c.empty()) return Rational(0);
  return c.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  UniPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  UniPoly r;
  if (c.empty() || o.c.empty()) return r;
  r.c.assign(c.size() + o.c.size() - 1, Rational(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.trim();
  return r;
}

Rational UniPoly::eval(const Rational& t) const {
  Rational v(0);
  for (size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

BiPoly BiPoly::constant(Rational c) { return monomial(0, 0, std::move(c)); }

BiPoly BiPoly::monomial(int i, int j, Rational c) {
  BiPoly p;
  if (c != 0) p.coeff[{i, j}] = std::move(c);
  return p;
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [ij, c] : coeff) d = std::max(d, ij.first + ij.second);
  return d;
}

Rational BiPoly::get(int i, int j) const {
  auto it = coeff.find({i, j});
  return it == coeff.end() ? Rational(0) : it->second;
}

void BiPoly::set(int i, int j, Rational c) {
  if (c == 0)
    coeff.erase({i, j});
  else
    coeff[{i, j}] = std::move(c);
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [ij, c] : o.coeff) {
    auto it = r.coeff.find(ij);
    if (it == r.coeff.end()) {
      r.coeff[ij] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.coeff.erase(it);
    }
  }
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator-() const {
  BiPoly r;
  for (const auto& [ij, c] : coeff) r.coeff[ij] = -c;
  return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (const auto& [ij, c] : coeff)
    for (const auto& [kl, d] : o.coeff) {
      auto key = std::make_pair(ij.first + kl.first, ij.second + kl.second);
      auto it = r.coeff.find(key);
      if (it == r.coeff.end()) {
        Rational p = c * d;
        if (p != 0) r.coeff[key] = std::move(p);
      } else {
        it->second += c * d;
        if (it->second == 0) r.coeff.erase(it);
      }
    }
  return r;
}

BiPoly BiPoly::operator*(const Rational& k) const {
  BiPoly r;
  if (k == 0) return r;
  for (const auto& [ij, c] : coeff) r.coeff[ij] = c * k;
  return r;
}

Rational BiPoly::eval(const Rational& m, const Rational& n) const {
  Rational v(0);
  for (const auto& [ij, c] : coeff) {
    Rational term = c;
    for (int i = 0; i < ij.first; ++i) term *= m;
    for (int j = 0; j < ij.second; ++j) term *= n;
    v += term;
  }
  return v;
}

Int BiPoly::eval_int(const Int& m, const Int& n) const {
  Int v(0);
  for (const auto& [ij, c] : coeff) {
    if (c.get_den() != 1) throw Error("eval_int on non-integer coefficient");
    Int term = c.get_num();
    for (int i = 0; i < ij.first; ++i) term *= m;
    for (int j = 0; j < ij.second; ++j) term *= n;
    v += term;
  }
  return v;
}

UniPoly BiPoly::substitute(const UniPoly& pm, const UniPoly& pn) const {
  UniPoly out;
  for (const auto& [ij, c] : coeff) {
    UniPoly term(c);
    for (int i = 0; i < ij.first; ++i) term = term * pm;
    for (int j = 0; j < ij.second; ++j) term = term * pn;
    out = out + term;
  }
  return out;
}

std::string BiPoly::to_text() const {
  if (coeff.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ij, c] : coeff) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (ij.first) os << "*m^" << ij.first;
    if (ij.second) os << "*n^" << ij.second;
  }
  return os.str();
}

}  // namespace sl3
