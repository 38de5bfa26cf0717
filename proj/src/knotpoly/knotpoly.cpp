#include "khdetect/knotpoly.hpp"

#include <numeric>

#include "khdetect/errors.hpp"

namespace khdetect {

LaurentPoly jones_from_kh(const BigradedDims& b) {
  LaurentPoly v;
  for (const auto& [hq, dim] : b.dims) {
    const auto [h, q] = hq;
    if (q % 2) throw DomainError("odd quantum grading " + std::to_string(q) + " in knot homology");
    v.add_term(q / 2, mpz_class(static_cast<unsigned long>(dim)) * (h % 2 ? -1 : 1));
  }
  return v;
}

mpz_class determinant_from_jones(const LaurentPoly& v) { return abs(v.evaluate_at_minus_one()); }

mpz_class determinant_from_alexander(const LaurentPoly& a) { return abs(a.evaluate_at_minus_one()); }

std::optional<int> s_from_thin(const BigradedDims& b) {
  const DeltaSupport s = delta_support(b);
  if (!s.single()) return std::nullopt;
  return 2 * s.multiplicity.begin()->first;
}

LaurentPoly normalise_alexander(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("cannot normalise the zero polynomial");
  const int span = p.max_exponent() + p.min_exponent();
  if (span % 2) throw DomainError("polynomial has no symmetric representative: " + p.to_string());
  LaurentPoly r = p.shifted(-span / 2);
  if (r.evaluate_at_one() < 0) r = r.negated();
  if (!r.is_symmetric()) throw DomainError("polynomial has no symmetric representative: " + p.to_string());
  return r;
}

namespace {

// Polynomials in t with integer coefficients, used as matrix entries.
using Poly = std::vector<mpz_class>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly sub(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Exact division in Z[t]; the divisor's lowest nonzero coefficient drives the
// elimination from the bottom, so no unit leading coefficient is needed.
Poly exact_div(const Poly& a, const Poly& b) {
  if (b.empty()) throw InternalError("Bareiss: division by zero pivot");
  if (a.empty()) return {};
  std::size_t lb = 0;
  while (b[lb] == 0) ++lb;
  Poly r = a;
  Poly q(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) continue;
    if (k < lb || !mpz_divisible_p(r[k].get_mpz_t(), b[lb].get_mpz_t()))
      throw InternalError("Bareiss: inexact division");
    const mpz_class f = r[k] / b[lb];
    q[k - lb] = f;
    for (std::size_t j = lb; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      if (k - lb + j >= r.size()) throw InternalError("Bareiss: inexact division");
      r[k - lb + j] -= f * b[j];
    }
  }
  trim(q);
  return q;
}

// Fraction-free determinant over Z[t].
Poly bareiss_det(std::vector<std::vector<Poly>> a) {
  const std::size_t n = a.size();
  if (n == 0) return {1};
  Poly prev{1};
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_div(sub(mul(a[i][j], a[k][k]), mul(a[i][k], a[k][j])), prev);
      a[i][k].clear();
    }
    prev = a[k][k];
  }
  Poly d = a[n - 1][n - 1];
  if (sign < 0)
    for (auto& c : d) c = -c;
  return d;
}

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

}  // namespace

LaurentPoly alexander_fox(const PlanarDiagram& d) {
  const std::size_t n = d.crossing_count();
  if (n == 0) return LaurentPoly::constant(1);

  // arcs: edges joined through the over-strand of each crossing
  const int m = d.edge_count();
  std::vector<int> parent(m + 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& x : d.crossings()) parent[find_root(parent, x.e[1])] = find_root(parent, x.e[3]);
  std::vector<int> arc_of(m + 1, -1);
  int arcs = 0;
  for (int l = 1; l <= m; ++l) {
    const int r = find_root(parent, l);
    if (arc_of[r] < 0) arc_of[r] = arcs++;
    arc_of[l] = arc_of[r];
  }
  if (arcs != static_cast<int>(n)) throw InternalError("Wirtinger presentation: arc count differs from crossing count");

  // Row of relation x_out = x_over^{+-1} x_in x_over^{-+1}. Positive crossing:
  // (1 - t) at over, t at in, -1 at out. Negative, scaled by t: (t - 1) at
  // over, 1 at in, -t at out.
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
  auto add = [](Poly& p, long c0, long c1) {
    if (p.size() < 2) p.resize(2);
    p[0] += c0;
    p[1] += c1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = d.crossings()[i].e;
    const int in = arc_of[e[0]], out = arc_of[e[2]], over = arc_of[e[1]];
    if (d.sign(i) > 0) {
      add(a[i][over], 1, -1);
      add(a[i][in], 0, 1);
      add(a[i][out], -1, 0);
    } else {
      add(a[i][over], -1, 1);
      add(a[i][in], 1, 0);
      add(a[i][out], 0, -1);
    }
  }
  for (auto& row : a)
    for (auto& p : row) trim(p);

  std::vector<std::vector<Poly>> minor(n - 1, std::vector<Poly>(n - 1));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) minor[i][j] = a[i][j];
  const Poly det = bareiss_det(std::move(minor));
  if (det.empty()) throw InternalError("Alexander minor vanishes identically");
  LaurentPoly p;
  for (std::size_t k = 0; k < det.size(); ++k) p.add_term(static_cast<int>(k), det[k]);
  return normalise_alexander(p);
}

}  // namespace khdetect
