#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace khdetect {

enum class ScalarKind { Rationals, PrimeField, Integers };

struct ScalarDomain {
  ScalarKind kind = ScalarKind::Rationals;
  std::uint32_t p = 0;  // characteristic, only for PrimeField

  static ScalarDomain rationals() { return {ScalarKind::Rationals, 0}; }
  static ScalarDomain integers() { return {ScalarKind::Integers, 0}; }
  // Throws DomainError unless p is prime.
  static ScalarDomain prime_field(std::uint32_t p);

  bool is_field() const { return kind != ScalarKind::Integers; }
  std::string name() const;
  bool operator==(const ScalarDomain&) const = default;
};

bool is_prime(std::uint64_t n);

// Sparse matrix over Q, F_p or Z. Only nonzero entries are stored; prime-field
// entries are kept as canonical residues in [0, p).
class ExactMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  ExactMatrix(std::size_t rows, std::size_t cols, ScalarDomain domain);

  static ExactMatrix identity(std::size_t n, ScalarDomain domain);
  static ExactMatrix from_rows(const std::vector<std::vector<long>>& rows, ScalarDomain domain);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ScalarDomain& domain() const { return domain_; }
  std::size_t nonzeros() const { return entries_.size(); }
  const std::map<Index, mpq_class>& entries() const { return entries_; }

  mpq_class get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const mpq_class& v);
  void add(std::size_t r, std::size_t c, const mpq_class& v);

  // Same entries read in another domain (reduction mod p, or Z -> Q).
  ExactMatrix over(ScalarDomain domain) const;
  // Entry (i, j) moves to (row_perm[i], col_perm[j]).
  ExactMatrix permuted(const std::vector<std::size_t>& row_perm,
                       const std::vector<std::size_t>& col_perm) const;

 private:
  mpq_class normalize(const mpq_class& v) const;

  std::size_t rows_;
  std::size_t cols_;
  ScalarDomain domain_;
  std::map<Index, mpq_class> entries_;
};

// Exact rank over a field. Throws DomainError for integer matrices.
std::size_t rank(const ExactMatrix& m);

// Nonzero invariant factors d_1 | d_2 | ... | d_r (positive) of an integer
// matrix. Throws DomainError for non-integer domains.
std::vector<mpz_class> smith_normal_form(const ExactMatrix& m);

}  // namespace khdetect
