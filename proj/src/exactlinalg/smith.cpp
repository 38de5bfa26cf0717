#include <algorithm>
#include <set>

#include "khdetect/errors.hpp"
#include "khdetect/exactlinalg.hpp"

namespace khdetect {

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

// Elementary reduction with the smallest entry as pivot and nearest-integer
// quotients, so remainders at least halve each round and entries stay small.
std::vector<mpz_class> dense_snf(Dense a) {
  std::vector<mpz_class> out;
  const std::size_t nr = a.size();
  const std::size_t nc = nr ? a[0].size() : 0;
  auto nearest = [](const mpz_class& x, const mpz_class& d) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    if (2 * abs(r) > abs(d)) q += 1;  // r has the sign of d
    return q;
  };
  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    for (;;) {
      bool any = false;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j)
          if (a[i][j] != 0 && (!any || abs(a[i][j]) < abs(a[bi][bj]))) {
            any = true;
            bi = i;
            bj = j;
          }
      if (!any) return out;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      const mpz_class p = a[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (a[i][t] == 0) continue;
        const mpz_class q = nearest(a[i][t], p);
        for (std::size_t j = t; j < nc; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (a[t][j] == 0) continue;
        const mpz_class q = nearest(a[t][j], p);
        for (std::size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < nr && divides; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), p.get_mpz_t())) {
            for (std::size_t k = t; k < nc; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

}  // namespace

std::vector<mpz_class> smith_normal_form(const ExactMatrix& m) {
  if (m.domain().kind != ScalarKind::Integers)
    throw DomainError("smith_normal_form requires an integer matrix");

  // Unit pivots are removed sparsely first: each contributes an invariant
  // factor 1 and only the leftover block needs the dense pass.
  std::vector<std::map<std::size_t, mpz_class>> rows(m.rows());
  std::vector<std::set<std::size_t>> col_rows(m.cols());
  for (const auto& [ij, v] : m.entries()) {
    rows[ij.first][ij.second] = v.get_num();
    col_rows[ij.second].insert(ij.first);
  }
  std::size_t units = 0;
  for (bool found = true; found;) {
    found = false;
    std::size_t best_r = 0, best_c = 0, best_cost = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (!found || cost < best_cost) {
          found = true;
          best_r = r;
          best_c = c;
          best_cost = cost;
        }
      }
    if (!found) break;
    const auto pivot = rows[best_r];
    const mpz_class pv = pivot.at(best_c);
    const std::vector<std::size_t> targets(col_rows[best_c].begin(), col_rows[best_c].end());
    for (std::size_t s : targets) {
      if (s == best_r) continue;
      const mpz_class f = rows[s][best_c] * pv;  // pv = pv^-1 for units
      for (const auto& [c, v] : pivot) {
        mpz_class& x = rows[s][c];
        x -= f * v;
        if (x == 0) {
          rows[s].erase(c);
          col_rows[c].erase(s);
        } else {
          col_rows[c].insert(s);
        }
      }
    }
    for (const auto& [c, v] : pivot) col_rows[c].erase(best_r);
    rows[best_r].clear();
    ++units;
  }

  std::vector<std::size_t> live_rows, live_cols;
  std::vector<long> col_pos(m.cols(), -1);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!col_rows[c].empty()) {
      col_pos[c] = static_cast<long>(live_cols.size());
      live_cols.push_back(c);
    }
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!rows[r].empty()) live_rows.push_back(r);
  Dense a(live_rows.size(), std::vector<mpz_class>(live_cols.size()));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : rows[live_rows[i]]) a[i][col_pos[c]] = v;

  std::vector<mpz_class> out(units, mpz_class(1));
  for (auto& d : dense_snf(std::move(a))) out.push_back(std::move(d));
  return out;
}

}  // namespace khdetect
