#include "leekh/field.hpp"

#include <algorithm>
#include <cctype>

namespace leekh {

std::int64_t fp_inverse(std::int64_t a, std::int64_t p) {
  // Extended Euclid; p prime, a != 0 mod p.
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r < 0) new_r += p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw InvariantViolation("fp_inverse: argument not invertible");
  return t < 0 ? t + p : t;
}

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p == 2)
    throw ValidationError(
        "coefficient field must have 2 != 0; F_2 is not supported");
  if (!is_prime(p))
    throw ValidationError("field modulus " + std::to_string(p) + " is not prime");
  return FieldSpec(p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "q") return rationals();
  if (s.rfind("fp:", 0) == 0) {
    try {
      return prime(std::stoll(s.substr(3)));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad field spec '" + text + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("bad field spec '" + text + "'");
    }
  }
  throw ParseError("bad field spec '" + text + "' (expected q or fp:P)");
}

std::string FieldSpec::to_string() const {
  return is_rationals() ? "Q" : "Fp:" + std::to_string(p_);
}

}  // namespace leekh
