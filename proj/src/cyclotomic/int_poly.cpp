#include "khdetect/int_poly.hpp"

#include <sstream>

#include "khdetect/errors.hpp"

namespace khdetect {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t k) {
  std::vector<mpz_class> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<mpz_class> v(coeffs.begin(), coeffs.end());
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::negate_variable() const {
  IntPoly r = *this;
  for (std::size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly operator*(IntPoly a, const mpz_class& k) {
  for (auto& c : a.c_) c *= k;
  a.trim();
  return a;
}

void IntPoly::divmod_unit(const IntPoly& divisor, IntPoly& quotient, IntPoly& remainder) const {
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  const mpz_class& lc = divisor.leading();
  if (lc != 1 && lc != -1) throw DomainError("divisor leading coefficient must be a unit");
  std::vector<mpz_class> r = c_;
  const std::size_t dd = divisor.c_.size() - 1;
  std::vector<mpz_class> q(r.size() > dd ? r.size() - dd : 0);
  for (std::size_t k = r.size(); k-- > dd;) {
    if (r[k] == 0) continue;
    const mpz_class f = r[k] * lc;  // lc^-1 == lc
    q[k - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= f * divisor.c_[j];
  }
  quotient = IntPoly(std::move(q));
  remainder = IntPoly(std::move(r));
}

bool IntPoly::divides_into(const IntPoly& dividend, IntPoly& quotient) const {
  IntPoly q, r;
  dividend.divmod_unit(*this, q, r);
  if (!r.is_zero()) return false;
  quotient = std::move(q);
  return true;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const mpz_class& c = c_[k];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << var;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

std::string IntPoly::to_list() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? ", " : "") << c_[k].get_str();
  os << ']';
  return os.str();
}

}  // namespace khdetect
