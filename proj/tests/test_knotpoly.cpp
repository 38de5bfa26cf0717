#include "doctest.h"
#include "khdetect/errors.hpp"
#include "khdetect/knotpoly.hpp"
#include "oracles.hpp"

using namespace khdetect;
using khtest::corpus_knot;

TEST_CASE("Laurent polynomial text round trip") {
  const LaurentPoly p{{-2, 1}, {0, -3}, {3, 7}};
  CHECK(p.to_string() == "7*t^3 - 3 + t^-2");
  CHECK(LaurentPoly::parse(p.to_string()) == p);
  CHECK(LaurentPoly::parse("2*t - 3 + 2*t^-1") == LaurentPoly{{-1, 2}, {0, -3}, {1, 2}});
  CHECK(LaurentPoly::parse("t^4-t^3+1-t^-3+t^-4").is_symmetric());
  CHECK(LaurentPoly::parse("0").is_zero());
  CHECK_THROWS_AS(LaurentPoly::parse("2*x"), ParseError);
  CHECK(normalise_alexander(LaurentPoly{{3, -1}, {4, 3}, {5, -1}}) == LaurentPoly{{-1, -1}, {0, 3}, {1, -1}});
  CHECK_THROWS_AS(normalise_alexander(LaurentPoly{{0, 1}, {1, 2}}), DomainError);
}

TEST_CASE("Alexander polynomials of named knots") {
  CHECK(alexander_fox(PlanarDiagram{}).to_string() == "1");
  CHECK(alexander_fox(corpus_knot("3_1").diagram).to_string() == "t - 1 + t^-1");
  CHECK(alexander_fox(corpus_knot("4_1").diagram).to_string() == "-t + 3 - t^-1");
  CHECK(alexander_fox(corpus_knot("5_2").diagram).to_string() == "2*t - 3 + 2*t^-1");
  CHECK(alexander_fox(corpus_knot("6_1").diagram).to_string() == "-2*t + 5 - 2*t^-1");
  CHECK(alexander_fox(corpus_knot("8_19").diagram).to_string() == "t^3 - t^2 + 1 - t^-2 + t^-3");
  CHECK(alexander_fox(khtest::torus_knot(2, 5)).to_string() == "t^2 - t + 1 - t^-1 + t^-2");
  CHECK(alexander_fox(corpus_knot("unknot_d4").diagram).to_string() == "1");
}

TEST_CASE("polynomial properties on the corpus") {
  for (const auto& k : khtest::corpus(9)) {
    INFO(k.name);
    const auto a = alexander_fox(k.diagram);
    const auto v = jones_from_kh(homology_dims(k.diagram, Field::rationals()));
    CHECK(a.is_symmetric());
    CHECK(a.evaluate_at_one() == 1);
    CHECK(v.evaluate_at_one() == 1);
    CHECK(determinant_from_alexander(a) == determinant_from_jones(v));
    CHECK(alexander_fox(mirror(k.diagram)) == a);
    CHECK(alexander_fox(khtest::relabel(k.diagram, 1)) == a);
    if (k.diagram.crossing_count() >= 2) {
      CHECK(alexander_fox(khtest::add_kink(k.diagram, 1, 2)) == a);
      CHECK(alexander_fox(khtest::add_r2(k.diagram, 0, 1, false)) == a);
    }
  }
}

TEST_CASE("s from thin homology") {
  auto s = [](const PlanarDiagram& d) { return s_from_thin(homology_dims(d, Field::rationals())); };
  CHECK(s(corpus_knot("4_1").diagram) == 0);
  CHECK(s(khtest::torus_knot(2, 5)) == 4);
  CHECK(s(mirror(corpus_knot("3_1").diagram)) == 2);
  CHECK(s(corpus_knot("3_1").diagram) == -2);
  CHECK_FALSE(s(corpus_knot("8_19").diagram).has_value());
}
