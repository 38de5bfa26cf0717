#include "khdetect/errors.hpp"
#include "khdetect/exactlinalg.hpp"

namespace khdetect {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ScalarDomain ScalarDomain::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  return {ScalarKind::PrimeField, p};
}

std::string ScalarDomain::name() const {
  switch (kind) {
    case ScalarKind::Rationals: return "Q";
    case ScalarKind::Integers: return "Z";
    case ScalarKind::PrimeField: return "F" + std::to_string(p);
  }
  return "?";
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, ScalarDomain domain)
    : rows_(rows), cols_(cols), domain_(domain) {
  if (domain.kind == ScalarKind::PrimeField && !is_prime(domain.p))
    throw DomainError("characteristic " + std::to_string(domain.p) + " is not prime");
}

ExactMatrix ExactMatrix::identity(std::size_t n, ScalarDomain domain) {
  ExactMatrix m(n, n, domain);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<long>>& rows, ScalarDomain domain) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), nc, domain);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw DomainError("ragged row list");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

mpq_class ExactMatrix::normalize(const mpq_class& v) const {
  switch (domain_.kind) {
    case ScalarKind::Rationals: return v;
    case ScalarKind::Integers:
      if (v.get_den() != 1) throw DomainError("non-integer entry in an integer matrix");
      return v;
    case ScalarKind::PrimeField: {
      const mpz_class p = domain_.p;
      mpz_class den = v.get_den() % p;
      if (den == 0) throw DomainError("denominator divisible by the characteristic");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      mpz_class r = (v.get_num() * inv) % p;
      if (r < 0) r += p;
      return mpq_class(r);
    }
  }
  return v;
}

mpq_class ExactMatrix::get(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? mpq_class(0) : it->second;
}

void ExactMatrix::set(std::size_t r, std::size_t c, const mpq_class& v) {
  if (r >= rows_ || c >= cols_) throw DomainError("matrix index out of range");
  mpq_class x = normalize(v);
  if (x == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = x;
}

void ExactMatrix::add(std::size_t r, std::size_t c, const mpq_class& v) { set(r, c, get(r, c) + v); }

ExactMatrix ExactMatrix::over(ScalarDomain domain) const {
  ExactMatrix m(rows_, cols_, domain);
  for (const auto& [ij, v] : entries_) m.set(ij.first, ij.second, v);
  return m;
}

ExactMatrix ExactMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                  const std::vector<std::size_t>& col_perm) const {
  ExactMatrix m(rows_, cols_, domain_);
  for (const auto& [ij, v] : entries_) m.entries_[{row_perm.at(ij.first), col_perm.at(ij.second)}] = v;
  return m;
}

}  // namespace khdetect
