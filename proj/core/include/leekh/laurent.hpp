#pragma once

#include <map>
#include <string>

namespace leekh {

// Laurent polynomial in q with integer coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int exp, long long coeff = 1) {
    LaurentPoly p;
    p.add(exp, coeff);
    return p;
  }

  void add(int exp, long long coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms_.try_emplace(exp, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly p = *this;
    for (auto [e, c] : o.terms_) p.add(e, c);
    return p;
  }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly p;
    for (auto [e1, c1] : terms_)
      for (auto [e2, c2] : o.terms_) p.add(e1 + e2, c1 * c2);
    return p;
  }
  LaurentPoly substituted_q_inverse() const {
    LaurentPoly p;
    for (auto [e, c] : terms_) p.add(-e, c);
    return p;
  }

  const std::map<int, long long>& terms() const { return terms_; }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto [e, c] : terms_) {
      if (!s.empty()) s += c >= 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      long long a = c < 0 ? -c : c;
      if (a != 1 || e == 0) s += std::to_string(a);
      if (e != 0) {
        if (a != 1) s += "*";
        s += "q";
        if (e != 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }

 private:
  std::map<int, long long> terms_;
};

}  // namespace leekh
