#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace khdetect {

// Sparse Laurent polynomial in t with big-integer coefficients; zero
// coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const int, mpz_class>> terms);
  static LaurentPoly constant(const mpz_class& c) { return monomial(c, 0); }
  static LaurentPoly monomial(const mpz_class& c, int e);

  const std::map<int, mpz_class>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int min_exponent() const { return c_.begin()->first; }
  int max_exponent() const { return c_.rbegin()->first; }
  mpz_class coeff(int e) const;

  void add_term(int e, const mpz_class& c);
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  bool operator==(const LaurentPoly&) const = default;

  mpz_class evaluate_at_one() const;
  mpz_class evaluate_at_minus_one() const;
  LaurentPoly invert_variable() const;  // p(1/t)
  LaurentPoly shifted(int k) const;     // t^k p
  LaurentPoly negated() const;
  bool is_symmetric() const;

  // "2*t - 3 + 2*t^-1"
  std::string to_string() const;
  // [[exponent, coefficient], ...] in increasing exponent order
  std::vector<std::pair<int, mpz_class>> pairs() const;
  // Inverse of to_string (accepts the same shapes, whitespace-insensitive).
  static LaurentPoly parse(const std::string& text);

 private:
  std::map<int, mpz_class> c_;
};

}  // namespace khdetect
