#include <algorithm>
#include <set>

#include "khdetect/errors.hpp"
#include "khdetect/exactlinalg.hpp"

namespace khdetect {

namespace {

template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

template <class T>
const T* lookup(const SparseRow<T>& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  return it != row.end() && it->first == c ? &it->second : nullptr;
}

// Sparse elimination with a Markowitz pivot rule: take a shortest live row,
// and inside it the column touching the fewest live rows. `eliminate`
// replaces a target row by a combination that vanishes in the pivot column.
template <class T, class Eliminate>
std::size_t markowitz_rank(std::vector<SparseRow<T>> rows, std::size_t ncols, Eliminate eliminate) {
  std::vector<std::set<std::size_t>> col_rows(ncols);
  std::set<std::pair<std::size_t, std::size_t>> by_len;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    by_len.insert({rows[r].size(), r});
    for (const auto& e : rows[r]) col_rows[e.first].insert(r);
  }
  std::size_t rank = 0;
  while (!by_len.empty()) {
    const std::size_t r = by_len.begin()->second;
    by_len.erase(by_len.begin());
    SparseRow<T> pivot = std::move(rows[r]);
    for (const auto& e : pivot) col_rows[e.first].erase(r);
    std::size_t pc = pivot.front().first;
    for (const auto& e : pivot)
      if (col_rows[e.first].size() < col_rows[pc].size()) pc = e.first;
    const T pv = *lookup(pivot, pc);
    const std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (std::size_t s : targets) {
      by_len.erase({rows[s].size(), s});
      for (const auto& e : rows[s]) col_rows[e.first].erase(s);
      const T sv = *lookup(rows[s], pc);
      rows[s] = eliminate(pivot, pv, rows[s], sv);
      for (const auto& e : rows[s]) col_rows[e.first].insert(s);
      if (!rows[s].empty()) by_len.insert({rows[s].size(), s});
    }
    ++rank;
  }
  return rank;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::size_t rank_mod_p(const ExactMatrix& m) {
  const std::uint32_t p = m.domain().p;
  std::vector<SparseRow<std::uint32_t>> rows(m.rows());
  for (const auto& [ij, v] : m.entries()) rows[ij.first].push_back({ij.second, static_cast<std::uint32_t>(v.get_num().get_ui())});
  auto elim = [p](const SparseRow<std::uint32_t>& piv, std::uint32_t pv, const SparseRow<std::uint32_t>& tgt,
                  std::uint32_t tv) {
    // tgt - (tv/pv) * piv
    const std::uint64_t f = static_cast<std::uint64_t>(tv) * inverse_mod(pv, p) % p;
    SparseRow<std::uint32_t> out;
    out.reserve(piv.size() + tgt.size());
    std::size_t i = 0, j = 0;
    while (i < piv.size() || j < tgt.size()) {
      std::size_t c;
      std::uint64_t v = 0;
      if (j == tgt.size() || (i < piv.size() && piv[i].first < tgt[j].first)) {
        c = piv[i].first;
        v = (p - f * piv[i].second % p) % p;
        ++i;
      } else if (i == piv.size() || tgt[j].first < piv[i].first) {
        c = tgt[j].first;
        v = tgt[j].second;
        ++j;
      } else {
        c = tgt[j].first;
        v = (tgt[j].second + p - f * piv[i].second % p) % p;
        ++i;
        ++j;
      }
      if (v) out.push_back({c, static_cast<std::uint32_t>(v)});
    }
    return out;
  };
  return markowitz_rank<std::uint32_t>(std::move(rows), m.cols(), elim);
}

void divide_content(SparseRow<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// Fraction-free: rows are cleared of denominators, eliminated by integer
// cross-multiplication and kept primitive to stop coefficient growth.
std::size_t rank_rational(const ExactMatrix& m) {
  std::vector<SparseRow<mpq_class>> qrows(m.rows());
  for (const auto& [ij, v] : m.entries()) qrows[ij.first].push_back({ij.second, v});
  std::vector<SparseRow<mpz_class>> rows(m.rows());
  for (std::size_t r = 0; r < qrows.size(); ++r) {
    mpz_class l = 1;
    for (const auto& e : qrows[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
    for (const auto& e : qrows[r]) rows[r].push_back({e.first, mpz_class(e.second.get_num() * (l / e.second.get_den()))});
    divide_content(rows[r]);
  }
  auto elim = [](const SparseRow<mpz_class>& piv, const mpz_class& pv, const SparseRow<mpz_class>& tgt,
                 const mpz_class& tv) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), tv.get_mpz_t());
    const mpz_class a = pv / g, b = tv / g;  // a*tgt - b*piv
    SparseRow<mpz_class> out;
    out.reserve(piv.size() + tgt.size());
    std::size_t i = 0, j = 0;
    while (i < piv.size() || j < tgt.size()) {
      std::size_t c;
      mpz_class v;
      if (j == tgt.size() || (i < piv.size() && piv[i].first < tgt[j].first)) {
        c = piv[i].first;
        v = -b * piv[i].second;
        ++i;
      } else if (i == piv.size() || tgt[j].first < piv[i].first) {
        c = tgt[j].first;
        v = a * tgt[j].second;
        ++j;
      } else {
        c = tgt[j].first;
        v = a * tgt[j].second - b * piv[i].second;
        ++i;
        ++j;
      }
      if (v != 0) out.push_back({c, std::move(v)});
    }
    divide_content(out);
    return out;
  };
  return markowitz_rank<mpz_class>(std::move(rows), m.cols(), elim);
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
  switch (m.domain().kind) {
    case ScalarKind::PrimeField: return rank_mod_p(m);
    case ScalarKind::Rationals: return rank_rational(m);
    case ScalarKind::Integers: break;
  }
  throw DomainError("rank requires a field; use smith_normal_form for integer matrices");
}

}  // namespace khdetect
