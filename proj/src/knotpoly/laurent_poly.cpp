#include "khdetect/laurent_poly.hpp"

#include <cctype>
#include <sstream>

#include "khdetect/errors.hpp"

namespace khdetect {

LaurentPoly::LaurentPoly(std::initializer_list<std::pair<const int, mpz_class>> terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

LaurentPoly LaurentPoly::monomial(const mpz_class& c, int e) {
  LaurentPoly p;
  p.add_term(e, c);
  return p;
}

mpz_class LaurentPoly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::add_term(int e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = c_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) c_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
  return r;
}

mpz_class LaurentPoly::evaluate_at_one() const {
  mpz_class s = 0;
  for (const auto& [e, c] : c_) s += c;
  return s;
}

mpz_class LaurentPoly::evaluate_at_minus_one() const {
  mpz_class s = 0;
  for (const auto& [e, c] : c_) s += (e % 2 == 0) ? c : mpz_class(-c);
  return s;
}

LaurentPoly LaurentPoly::invert_variable() const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace(-e, c);
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace(e + k, c);
  return r;
}

LaurentPoly LaurentPoly::negated() const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace(e, -c);
  return r;
}

bool LaurentPoly::is_symmetric() const { return *this == invert_variable(); }

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, c] = *it;
    const mpz_class a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << 't';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

std::vector<std::pair<int, mpz_class>> LaurentPoly::pairs() const { return {c_.begin(), c_.end()}; }

LaurentPoly LaurentPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  LaurentPoly p;
  std::size_t i = 0;
  auto digits = [&](std::string& out) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out += s[i++];
  };
  if (s == "0") return p;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    std::string num;
    digits(num);
    mpz_class c = num.empty() ? mpz_class(1) : mpz_class(num);
    int e = 0;
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && s[i] == 't') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ex;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ex += s[i++];
        digits(ex);
        if (ex.empty() || ex == "-" || ex == "+") throw ParseError("bad exponent in '" + text + "'");
        e = std::stoi(ex);
      }
    } else if (num.empty()) {
      throw ParseError("malformed polynomial '" + text + "'");
    }
    p.add_term(e, sign * c);
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw ParseError("malformed polynomial '" + text + "'");
  }
  return p;
}

}  // namespace khdetect
