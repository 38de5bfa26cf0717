#include <random>

#include "doctest.h"
#include "khdetect/errors.hpp"
#include "khdetect/exactlinalg.hpp"

using namespace khdetect;

namespace {

// Dense Gaussian elimination over Q.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<long>> random_matrix(std::mt19937& rng, int rows, int cols, int density, int range) {
  std::vector<std::vector<long>> m(rows, std::vector<long>(cols, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (static_cast<int>(rng() % 100) < density) x = static_cast<long>(rng() % (2 * range + 1)) - range;
  return m;
}

}  // namespace

TEST_CASE("domains") {
  CHECK(ScalarDomain::rationals().is_field());
  CHECK_FALSE(ScalarDomain::integers().is_field());
  CHECK(ScalarDomain::prime_field(7).is_field());
  CHECK_THROWS_AS(ScalarDomain::prime_field(9), DomainError);
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("matrix basics") {
  auto m = ExactMatrix::from_rows({{1, 2}, {3, 4}}, ScalarDomain::prime_field(5));
  CHECK(m.get(1, 1) == 4);
  m.add(1, 1, 3);
  CHECK(m.get(1, 1) == 2);
  m.set(0, 0, 5);
  CHECK(m.get(0, 0) == 0);
  CHECK(m.nonzeros() == 3);
  CHECK(rank(ExactMatrix::identity(4, ScalarDomain::rationals())) == 4);
  CHECK(rank(ExactMatrix::from_rows({{2, 4}, {1, 2}}, ScalarDomain::rationals())) == 1);
  CHECK(rank(ExactMatrix::from_rows({{2, 0}, {0, 3}}, ScalarDomain::prime_field(2))) == 1);
  CHECK_THROWS_AS(rank(ExactMatrix::from_rows({{1}}, ScalarDomain::integers())), DomainError);
  CHECK_THROWS_AS(smith_normal_form(ExactMatrix::from_rows({{1}}, ScalarDomain::rationals())), DomainError);
}

TEST_CASE("Smith normal form of a textbook matrix") {
  const auto m = ExactMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, ScalarDomain::integers());
  const auto f = smith_normal_form(m);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == 2);
  CHECK(f[1] == 6);
  CHECK(f[2] == 12);
  CHECK(smith_normal_form(ExactMatrix(0, 3, ScalarDomain::integers())).empty());
}

TEST_CASE("ranks agree with dense elimination and with Smith normal form") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    const int r = 1 + rng() % 9, c = 1 + rng() % 9;
    const auto rows = random_matrix(rng, r, c, 20 + rng() % 60, iter % 3 ? 2 : 40);
    std::vector<std::vector<mpq_class>> q(r, std::vector<mpq_class>(c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) q[i][j] = rows[i][j];
    const std::size_t rq = rank(ExactMatrix::from_rows(rows, ScalarDomain::rationals()));
    CHECK(rq == dense_rank(q));
    const auto snf = smith_normal_form(ExactMatrix::from_rows(rows, ScalarDomain::integers()));
    CHECK(snf.size() == rq);
    for (std::size_t i = 1; i < snf.size(); ++i) CHECK(snf[i] % snf[i - 1] == 0);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      std::size_t units = 0;
      for (const auto& f : snf) units += f % p != 0;
      CHECK(rank(ExactMatrix::from_rows(rows, ScalarDomain::prime_field(p))) == units);
    }
  }
}

TEST_CASE("permutation and change of domain") {
  const auto m = ExactMatrix::from_rows({{1, 2, 0}, {0, 3, 4}}, ScalarDomain::integers());
  const auto p = m.permuted({1, 0}, {2, 0, 1});
  CHECK(p.get(0, 0) == 3);
  CHECK(p.get(0, 1) == 4);
  CHECK(p.get(1, 2) == 1);
  CHECK(p.get(1, 0) == 2);
  CHECK(p.nonzeros() == 4);
  CHECK(rank(m.over(ScalarDomain::prime_field(3))) == 2);
}
