#include <random>
#include <set>

#include "doctest.h"
#include "khdetect/cyclotomic.hpp"
#include "khdetect/errors.hpp"

using namespace khdetect;

namespace {

IntPoly t_pow(std::size_t k) { return IntPoly::monomial(1, k); }

// p(-t)
IntPoly at_minus_t(const IntPoly& p) { return p.negate_variable(); }

}  // namespace

TEST_CASE("integer polynomial arithmetic") {
  const auto a = IntPoly::from_ints({1, -1, 1});
  const auto b = IntPoly::from_ints({1, 1});
  CHECK(a * b == IntPoly::from_ints({1, 0, 0, 1}));
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  IntPoly q;
  CHECK(b.divides_into(a * b, q));
  CHECK(q == a);
  CHECK_FALSE(b.divides_into(a, q));
  CHECK(a.evaluate(2) == 3);
  CHECK(a.to_string() == "t^2 - t + 1");
  CHECK(a.to_list() == "[1, -1, 1]");
}

TEST_CASE("small cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == IntPoly::from_ints({-1, 1}));
  CHECK(cyclotomic_poly(2) == IntPoly::from_ints({1, 1}));
  CHECK(cyclotomic_poly(4) == IntPoly::from_ints({1, 0, 1}));
  CHECK(cyclotomic_poly(6) == IntPoly::from_ints({1, -1, 1}));
  CHECK(cyclotomic_poly(10).to_string() == "t^4 - t^3 + t^2 - t + 1");
  CHECK(cyclotomic_poly(12) == IntPoly::from_ints({1, 0, -1, 0, 1}));
  // First coefficient of absolute value 2.
  CHECK(cyclotomic_poly(105).coeff(7) == -2);
  for (unsigned n = 1; n <= 400; ++n) CHECK(cyclotomic_poly(n).degree() == static_cast<int>(euler_phi(n)));
  CHECK_THROWS_AS(cyclotomic_poly(0), DomainError);
}

TEST_CASE("product over divisors is t^n - 1") {
  for (unsigned n = 1; n <= 120; ++n) {
    IntPoly prod = IntPoly::from_ints({1});
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic_poly(d);
    CHECK(prod == t_pow(n) - IntPoly::from_ints({1}));
  }
}

TEST_CASE("Graeffe step on cyclotomic polynomials") {
  for (unsigned n = 1; n <= 120; ++n) {
    INFO("n = " << n);
    const IntPoly g = graeffe_step(cyclotomic_poly(n));
    if (n % 2)
      CHECK(g == cyclotomic_poly(n));
    else if (n % 4 == 2)
      CHECK(g == cyclotomic_poly(n / 2));
    else
      CHECK(g == cyclotomic_poly(n / 2) * cyclotomic_poly(n / 2));
  }
}

TEST_CASE("special values") {
  CHECK(special_values(10).at_one == 1);
  CHECK(special_values(10).at_minus_one == 5);
  CHECK(special_values(9).at_one == 3);
  CHECK(special_values(9).at_minus_one == 1);
  CHECK(special_values(16).at_minus_one == 2);  // t^8 + 1
  for (unsigned n = 2; n <= 600; ++n) CHECK_NOTHROW(special_values(n));
  CHECK_THROWS_AS(special_values(1), DomainError);
}

TEST_CASE("p_h and q_h") {
  CHECK(p_family(1) == cyclotomic_poly(10));
  CHECK(p_family(2) == cyclotomic_poly(10) * cyclotomic_poly(12));
  const IntPoly two = IntPoly::from_ints({2});
  for (unsigned h = 1; h <= 200; ++h) CHECK(graeffe_step(p_family(h)) == q_family(h));
  for (unsigned h = 1; h <= 100; ++h) {
    INFO("h = " << h);
    // q_h(t) - p_h(t) = 2 t^h (t^{2h} + 1)
    CHECK(q_family(h) - p_family(h) == two * t_pow(h) * (t_pow(2 * h) + IntPoly::from_ints({1})));
    // q_h(-t) - p_h(t) = 2t (t^{h-1} + (-1)^h)(t^{3h-1} + (-1)^h)
    const IntPoly sign = IntPoly::from_ints({h % 2 ? -1 : 1});
    CHECK(at_minus_t(q_family(h)) - p_family(h) == two * t_pow(1) * (t_pow(h - 1) + sign) * (t_pow(3 * h - 1) + sign));
  }
}

TEST_CASE("recogniser agrees with enumeration of all small cyclotomic products") {
  // Every product of cyclotomic polynomials of degree <= 6.
  std::vector<unsigned> small;
  for (unsigned n = 1; n <= 100; ++n)
    if (euler_phi(n) <= 6) small.push_back(n);
  std::set<std::string> products;
  std::vector<IntPoly> frontier{IntPoly::from_ints({1})};
  std::vector<std::size_t> last{0};
  for (std::size_t k = 0; k < frontier.size(); ++k)
    for (std::size_t i = last[k]; i < small.size(); ++i) {
      const IntPoly p = frontier[k] * cyclotomic_poly(small[i]);
      if (p.degree() > 6) continue;
      frontier.push_back(p);
      last.push_back(i);
      products.insert(p.to_list());
    }
  for (std::size_t k = 1; k < frontier.size(); ++k) {
    const auto f = is_cyclotomic_product(frontier[k]);
    CHECK(f.is_product());
    CHECK(f.expand() == frontier[k]);
  }
  // Every monic polynomial of degree <= 4 with coefficients in [-2, 2].
  for (int deg = 1; deg <= 4; ++deg) {
    std::vector<long> c(deg + 1, -2);
    c[deg] = 1;
    for (;;) {
      const IntPoly p = IntPoly::from_ints(c);
      const auto f = is_cyclotomic_product(p);
      CHECK(f.is_product() == (products.count(p.to_list()) > 0));
      CHECK(f.expand() == p);
      int i = 0;
      while (i < deg && c[i] == 2) c[i++] = -2;
      if (i == deg) break;
      ++c[i];
    }
  }
}

TEST_CASE("recogniser edge cases") {
  CHECK(is_cyclotomic_product(IntPoly::from_ints({1})).is_product());
  CHECK_FALSE(is_cyclotomic_product(IntPoly::from_ints({1, 2})).is_product());
  CHECK_FALSE(is_cyclotomic_product(IntPoly::from_ints({2, 0, 1})).is_product());
  const auto big = cyclotomic_poly(997) * cyclotomic_poly(1024) * cyclotomic_poly(15);
  const auto f = is_cyclotomic_product(big);
  CHECK(f.is_product());
  CHECK(f.to_string() == "Phi_15 * Phi_997 * Phi_1024");
  CHECK_THROWS_AS(is_cyclotomic_product(t_pow(3001) - IntPoly::from_ints({1})), ResourceError);
  CHECK(is_cyclotomic_product(p_family(3)).to_string() == "(" + p_family(3).to_string() + ")");
}

TEST_CASE("structure of p_h") {
  const auto rep = verify_p_family(60);
  CHECK(rep.all_pass());
  CHECK(rep.phi10_mod5_biconditional);
  CHECK(rep.rows.at(0).factorization.to_string() == "Phi_10");
  CHECK(rep.rows.at(1).factorization.to_string() == "Phi_10 * Phi_12");
  for (const auto& r : rep.rows) CHECK(r.factorization.is_product() == (r.h <= 2));
}
