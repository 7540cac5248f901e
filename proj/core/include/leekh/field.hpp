#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "leekh/errors.hpp"

namespace leekh {

// Exact rational scalar.  GMP keeps the arithmetic exact through long
// elimination chains; coefficients in practice stay tiny.
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline std::string to_string(const Rational& x) { return x.get_str(); }

// Scalar in F_p, p an odd prime.  Every element carries its modulus so that
// mixed-modulus arithmetic is caught instead of silently computed.
struct Fp {
  std::int64_t v = 0;
  std::int64_t p = 0;

  Fp() = default;
  Fp(std::int64_t value, std::int64_t modulus) : v(value % modulus), p(modulus) {
    if (v < 0) v += p;
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    return a.v == b.v && (a.p == b.p || a.v == 0);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

std::int64_t fp_inverse(std::int64_t a, std::int64_t p);

inline Fp operator+(const Fp& a, const Fp& b) {
  if (a.p == 0) return b;
  if (b.p == 0) return a;
  if (a.p != b.p) throw InvariantViolation("Fp modulus mismatch");
  return Fp(a.v + b.v, a.p);
}
inline Fp operator-(const Fp& a) { return a.p == 0 ? a : Fp(a.p - a.v, a.p); }
inline Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
inline Fp operator*(const Fp& a, const Fp& b) {
  if (a.p == 0 || b.p == 0) return Fp();
  if (a.p != b.p) throw InvariantViolation("Fp modulus mismatch");
  return Fp(a.v * b.v, a.p);
}
inline Fp operator/(const Fp& a, const Fp& b) {
  if (b.p == 0 || b.v == 0) throw InvariantViolation("Fp division by zero");
  if (a.p == 0) return a;
  return Fp(a.v * fp_inverse(b.v, b.p), a.p);
}
inline Fp& operator+=(Fp& a, const Fp& b) { return a = a + b; }
inline Fp& operator-=(Fp& a, const Fp& b) { return a = a - b; }
inline Fp& operator*=(Fp& a, const Fp& b) { return a = a * b; }

inline bool is_zero(const Fp& x) { return x.v == 0; }
inline std::string to_string(const Fp& x) { return std::to_string(x.v); }

// Runtime choice of coefficient field: Q, or F_p for an odd prime p.
// p = 2 is rejected outright: every invariant computed here needs 2 != 0
// in the coefficient field.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(0); }
  static FieldSpec prime(std::int64_t p);

  // Accepts "q", "Q", "fp:P", "Fp:P".
  static FieldSpec parse(const std::string& text);

  bool is_rationals() const { return p_ == 0; }
  std::int64_t characteristic() const { return p_; }

  // "Q" or "Fp:<p>" (the JSON spelling).
  std::string to_string() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.p_ == b.p_; }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return a.p_ != b.p_; }

 private:
  explicit FieldSpec(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

template <class F>
F make_scalar(const FieldSpec& spec, long value);

template <>
inline Rational make_scalar<Rational>(const FieldSpec&, long value) {
  return Rational(value);
}

template <>
inline Fp make_scalar<Fp>(const FieldSpec& spec, long value) {
  return Fp(value, spec.characteristic());
}

}  // namespace leekh
