#include "khdetect/cyclotomic.hpp"

#include <cstdint>
#include <sstream>

#include "khdetect/errors.hpp"

namespace khdetect {

namespace {

std::vector<std::pair<unsigned long, unsigned>> factorize(unsigned long n) {
  std::vector<std::pair<unsigned long, unsigned>> f;
  for (unsigned long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    f.push_back({q, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

int moebius(unsigned long n) {
  int mu = 1;
  for (const auto& [q, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

// In-place multiplication / exact division by (t^d - 1) on a coefficient
// vector, constant term first.
void mul_binomial(std::vector<mpz_class>& c, unsigned d) {
  c.resize(c.size() + d);
  for (std::size_t k = c.size(); k-- > 0;) {
    mpz_class shifted = k >= d ? c[k - d] : mpz_class(0);
    c[k] = shifted - c[k];
  }
}

void div_binomial(std::vector<mpz_class>& c, unsigned d) {
  // c = q * (t^d - 1)  =>  q_k = -c_k + q_{k-d}
  const std::size_t qd = c.size() - d;
  std::vector<mpz_class> q(qd);
  for (std::size_t k = 0; k < qd; ++k) q[k] = (k >= d ? q[k - d] : mpz_class(0)) - c[k];
  for (std::size_t k = qd; k < c.size(); ++k)
    if (c[k] != (k >= d ? q[k - d] : mpz_class(0))) throw InternalError("inexact binomial division");
  c = std::move(q);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// A prime l = 1 mod n and an element of exact order n modulo l. Any p with
// Phi_n | p vanishes at that element, so a nonzero value rules Phi_n out.
struct RootOfUnity {
  std::uint64_t l = 0;
  std::uint64_t w = 0;
};

RootOfUnity primitive_root_of_unity(unsigned long n) {
  if (n == 1) return {2, 1};
  std::uint64_t l = n + 1;
  while (!miller_rabin(l)) l += n;
  const auto primes = factorize(n);
  for (std::uint64_t g = 2;; ++g) {
    const std::uint64_t w = powmod(g, (l - 1) / n, l);
    bool exact = true;
    for (const auto& pe : primes)
      if (powmod(w, n / pe.first, l) == 1) exact = false;
    if (exact) return {l, w};
  }
}

bool vanishes_at(const std::vector<mpz_class>& c, const RootOfUnity& r) {
  std::uint64_t acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    const std::uint64_t ck = mpz_fdiv_ui(c[k].get_mpz_t(), r.l);
    acc = (mulmod(acc, r.w, r.l) + ck) % r.l;
  }
  return acc == 0;
}

bool is_prime_power(unsigned long n, unsigned long& base) {
  const auto f = factorize(n);
  if (f.size() != 1) return false;
  base = f[0].first;
  return true;
}

}  // namespace

unsigned long euler_phi(unsigned long n) {
  unsigned long r = n;
  for (const auto& [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

IntPoly cyclotomic_poly(unsigned n) {
  if (n == 0) throw DomainError("cyclotomic_poly requires n >= 1");
  std::vector<mpz_class> c{1};
  std::vector<unsigned> dens;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    const int mu = moebius(n / d);
    if (mu == 1) mul_binomial(c, d);
    if (mu == -1) dens.push_back(d);
  }
  for (unsigned d : dens) div_binomial(c, d);
  // the sign works out to +1 for n >= 2; n = 1 gives t - 1 directly
  IntPoly r(std::move(c));
  if (r.leading() < 0) r = r * mpz_class(-1);
  return r;
}

SpecialValues special_values(unsigned n) {
  if (n < 2) throw DomainError("special_values requires n >= 2");
  auto at_one = [](unsigned m) -> mpz_class {
    unsigned long base = 0;
    if (m == 1) return 0;
    return is_prime_power(m, base) ? mpz_class(base) : mpz_class(1);
  };
  SpecialValues closed{at_one(n), n % 2 ? mpz_class(1) : at_one(n / 2)};
  const IntPoly phi = cyclotomic_poly(n);
  const mpz_class e1 = phi.evaluate(1), em1 = phi.evaluate(-1);
  if (e1 != closed.at_one || em1 != closed.at_minus_one)
    throw InternalError("special values of Phi_" + std::to_string(n) + " disagree: closed form (" +
                        closed.at_one.get_str() + ", " + closed.at_minus_one.get_str() +
                        "), evaluation (" + e1.get_str() + ", " + em1.get_str() + ")");
  return closed;
}

IntPoly graeffe_step(const IntPoly& p) {
  if (p.degree() < 1) throw DomainError("graeffe_step requires degree >= 1");
  std::vector<mpz_class> even, odd;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) (k % 2 ? odd : even).push_back(p.coeffs()[k]);
  const IntPoly pe(std::move(even)), po(std::move(odd));
  IntPoly q = pe * pe - IntPoly::monomial(1, 1) * (po * po);
  if (p.degree() % 2) q = q * mpz_class(-1);
  return q;
}

IntPoly p_family(unsigned h) {
  if (h == 0) throw DomainError("p_family requires h >= 1");
  IntPoly p = IntPoly::monomial(1, 4 * h);
  p -= IntPoly::monomial(1, 4 * h - 1);
  p += IntPoly::monomial(1, 2 * h);
  p -= IntPoly::monomial(1, 1);
  p += IntPoly::monomial(1, 0);
  return p;
}

IntPoly q_family(unsigned h) {
  if (h == 0) throw DomainError("q_family requires h >= 1");
  IntPoly q = IntPoly::monomial(1, 4 * h);
  q -= IntPoly::monomial(1, 4 * h - 1);
  q += IntPoly::monomial(2, 3 * h);
  q += IntPoly::monomial(1, 2 * h);
  q += IntPoly::monomial(2, h);
  q -= IntPoly::monomial(1, 1);
  q += IntPoly::monomial(1, 0);
  return q;
}

IntPoly CycloFactorization::expand() const {
  IntPoly r = remainder;
  for (const auto& [n, m] : factors)
    for (unsigned k = 0; k < m; ++k) r = r * cyclotomic_poly(n);
  return r;
}

std::string CycloFactorization::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, m] : factors) {
    os << (first ? "" : " * ") << "Phi_" << n;
    if (m > 1) os << '^' << m;
    first = false;
  }
  if (!is_product()) os << (first ? "" : " * ") << '(' << remainder.to_string() << ')';
  if (first && is_product()) os << '1';
  return os.str();
}

CycloFactorization is_cyclotomic_product(const IntPoly& p) {
  CycloFactorization out;
  out.remainder = p;
  if (p.degree() < 1 || !p.is_monic()) return out;
  if (p.coeff(0) != 1 && p.coeff(0) != -1) return out;
  const unsigned long deg = static_cast<unsigned long>(p.degree());
  if (deg > 3000) throw ResourceError("cyclotomic recognition is capped at degree 3000");

  const unsigned long bound = 2 * deg * deg;
  std::vector<std::uint32_t> phi(bound + 1);
  for (unsigned long i = 0; i <= bound; ++i) phi[i] = static_cast<std::uint32_t>(i);
  for (unsigned long i = 2; i <= bound; ++i)
    if (phi[i] == i)
      for (unsigned long j = i; j <= bound; j += i) phi[j] -= phi[j] / i;

  for (unsigned long n = 1; n <= bound; ++n) {
    if (out.remainder.degree() < 1) break;
    if (phi[n] > static_cast<unsigned long>(out.remainder.degree())) continue;
    const RootOfUnity root = primitive_root_of_unity(n);
    unsigned mult = 0;
    IntPoly phin;
    while (out.remainder.degree() >= static_cast<int>(phi[n]) && vanishes_at(out.remainder.coeffs(), root)) {
      if (phin.is_zero()) phin = cyclotomic_poly(static_cast<unsigned>(n));
      IntPoly q;
      if (!phin.divides_into(out.remainder, q)) break;
      out.remainder = std::move(q);
      ++mult;
    }
    if (mult) out.factors.push_back({static_cast<unsigned>(n), mult});
  }
  if (out.remainder.leading() < 0) out.remainder = out.remainder * mpz_class(-1);
  return out;
}

PFamilyReport verify_p_family(unsigned h_max) {
  if (h_max < 1) throw DomainError("verify_p_family requires h_max >= 1");
  PFamilyReport rep;
  rep.h_max = h_max;
  for (unsigned h = 1; h <= h_max; ++h) {
    PFamilyRow row;
    row.h = h;
    row.factorization = is_cyclotomic_product(p_family(h));
    const bool h_mod5 = h % 5 == 1 || h % 5 == 2;
    auto flag = [&](bool& field, const std::string& what) {
      field = false;
      rep.counterexamples.push_back("h=" + std::to_string(h) + ": " + what + " [" +
                                    row.factorization.to_string() + "]");
    };
    unsigned phi10_mult = 0;
    for (const auto& [n, m] : row.factorization.factors) {
      if (n % 2) flag(row.no_odd_factor, "odd cyclotomic factor Phi_" + std::to_string(n));
      if (n % 4 == 2 && (n != 10 || !h_mod5))
        flag(row.two_mod_four_ok, "factor Phi_" + std::to_string(n) + " with n = 2 mod 4");
      if (n == 10) phi10_mult = m;
    }
    row.phi10_divides = phi10_mult > 0;
    if (row.factorization.is_product()) {
      bool shape = phi10_mult == 1;
      for (const auto& [n, m] : row.factorization.factors) {
        if (n == 10) continue;
        if (n % 4 != 0 || (n & (n - 1)) == 0) shape = false;
      }
      if (!shape) flag(row.product_shape_ok, "cyclotomic product of unexpected shape");
    }
    if (row.factorization.is_product() != (h <= 2))
      flag(row.product_iff_small, row.factorization.is_product() ? "cyclotomic product with h >= 3"
                                                                 : "not a cyclotomic product for h <= 2");
    if (row.phi10_divides != h_mod5) rep.phi10_mod5_biconditional = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace khdetect
