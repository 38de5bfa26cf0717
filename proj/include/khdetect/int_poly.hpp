#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace khdetect {

// Dense integer polynomial, constant term first. The zero polynomial has no
// coefficients; otherwise the leading coefficient is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  static IntPoly monomial(const mpz_class& c, std::size_t k);
  static IntPoly from_ints(const std::vector<long>& coeffs);

  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  mpz_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }
  const mpz_class& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  mpz_class evaluate(const mpz_class& x) const;
  // p(-t)
  IntPoly negate_variable() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& k);
  bool operator==(const IntPoly&) const = default;

  // Exact division by a monic divisor: returns true and sets the quotient when
  // the remainder is zero.
  bool divides_into(const IntPoly& dividend, IntPoly& quotient) const;
  // Quotient and remainder by a divisor whose leading coefficient is +-1.
  void divmod_unit(const IntPoly& divisor, IntPoly& quotient, IntPoly& remainder) const;

  std::string to_string(const std::string& var = "t") const;
  std::string to_list() const;  // "[c0, c1, ...]"

 private:
  void trim();
  std::vector<mpz_class> c_;
};

}  // namespace khdetect
