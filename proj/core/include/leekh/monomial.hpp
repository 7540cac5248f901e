#pragma once

#include <compare>
#include <string>

#include "leekh/field.hpp"

namespace leekh {

// Homological / quantum bigrading.  X acts with bigrading (0,-2); T = X^2
// with (0,-4).
struct Bigrading {
  int t = 0;
  int q = 0;
  friend auto operator<=>(const Bigrading&, const Bigrading&) = default;
  Bigrading operator+(const Bigrading& o) const { return {t + o.t, q + o.q}; }
};

// c * X^n with c a nonzero field element.  All ring elements that ever appear
// in a homogeneous complex over F[X] are of this form, which is what makes
// the whole reduction pipeline monomial-only.
template <class F>
struct Monomial {
  F coeff{};
  int power = 0;

  Monomial() = default;
  Monomial(F c, int n) : coeff(std::move(c)), power(n) {}

  Monomial operator*(const Monomial& o) const {
    return Monomial(coeff * o.coeff, power + o.power);
  }
  Monomial operator-() const { return Monomial(-coeff, power); }

  // Quotient by a monomial of no larger power.
  Monomial divided_by(const Monomial& o) const {
    if (o.power > power)
      throw InvariantViolation("monomial division with larger power");
    return Monomial(coeff / o.coeff, power - o.power);
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.power == b.power && a.coeff == b.coeff;
  }
};

template <class F>
std::string to_string(const Monomial<F>& m) {
  std::string s = to_string(m.coeff);
  if (m.power == 1) s += "*X";
  if (m.power > 1) s += "*X^" + std::to_string(m.power);
  return s;
}

}  // namespace leekh
