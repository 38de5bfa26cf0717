#include "doctest.h"
#include "khdetect/errors.hpp"
#include "khdetect/khovanov.hpp"
#include "khdetect/knotpoly.hpp"
#include "oracles.hpp"

using namespace khdetect;
using khtest::corpus_knot;

namespace {

BigradedDims dims_of(std::initializer_list<std::tuple<int, int, std::size_t>> l, Field f = Field::rationals()) {
  BigradedDims b;
  b.field = f;
  for (auto [h, q, n] : l) b.dims[{h, q}] = n;
  return b;
}

BigradedDims flipped(const BigradedDims& b) {
  BigradedDims out;
  out.field = b.field;
  for (const auto& [g, n] : b.dims) out.dims[{-g.first, -g.second}] = n;
  return out;
}

HomologyOptions naive() {
  HomologyOptions o;
  o.naive = true;
  return o;
}

}  // namespace

TEST_CASE("fields") {
  CHECK(Field::parse("Q") == Field::rationals());
  CHECK(Field::parse("F2") == Field::prime(2));
  CHECK(Field::parse("97").p == 97);
  CHECK(Field::prime(5).name() == "F5");
  CHECK_THROWS_AS(Field::prime(4), DomainError);
  CHECK_THROWS_AS(Field::prime(101), DomainError);
  CHECK_THROWS_AS(Field::parse("R"), ParseError);
}

TEST_CASE("small knots") {
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
    CHECK(homology_dims(PlanarDiagram{}, f).dims == dims_of({{0, 0, 1}}).dims);
    CHECK(homology_dims(corpus_knot("unknot_d3").diagram, f).dims == dims_of({{0, 0, 1}}).dims);
    const auto right = mirror(corpus_knot("3_1").diagram);
    CHECK(homology_dims(right, f).dims == dims_of({{0, 2, 1}, {2, 6, 1}, {3, 8, 1}}).dims);
    CHECK(homology_dims(corpus_knot("4_1").diagram, f).dims ==
          dims_of({{-2, -4, 1}, {-1, -2, 1}, {0, 0, 1}, {1, 2, 1}, {2, 4, 1}}).dims);
  }
  const auto t25 = homology_dims(khtest::torus_knot(2, 5), Field::rationals());
  CHECK(t25.total() == 5);
  CHECK(delta_support(t25).to_string() == "{2:5}");
  const auto t34 = homology_dims(khtest::torus_knot(3, 4), Field::rationals());
  CHECK(t34.total() == 5);
  CHECK(delta_support(t34).multiplicity.size() == 2);
}

TEST_CASE("scanner agrees with the full cube on knots up to 8 crossings") {
  for (const auto& k : khtest::corpus(8))
    for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
      INFO(k.name << " over " << f.name());
      CHECK(homology_dims(k.diagram, f) == homology_dims(k.diagram, f, naive()));
    }
}

TEST_CASE("graded Euler characteristic is the Kauffman-bracket Jones polynomial") {
  // The oracle's smoothing convention is pinned by chirality: positive writhe,
  // right-handed trefoil, V = t + t^3 - t^4.
  const auto right = mirror(corpus_knot("3_1").diagram);
  REQUIRE(right.writhe() == 3);
  CHECK(khtest::kauffman_jones(right) == LaurentPoly{{1, 1}, {3, 1}, {4, -1}});
  for (const auto& k : khtest::corpus(9)) {
    INFO(k.name);
    CHECK(jones_from_kh(homology_dims(k.diagram, Field::rationals())) == khtest::kauffman_jones(k.diagram));
  }
}

TEST_CASE("mirror negates both gradings") {
  for (const auto& k : khtest::corpus(9))
    for (Field f : {Field::rationals(), Field::prime(2)}) {
      INFO(k.name);
      CHECK(homology_dims(mirror(k.diagram), f) == flipped(homology_dims(k.diagram, f)));
    }
}

TEST_CASE("invariance under basepoint, relabelling and Reidemeister moves") {
  for (const char* name : {"3_1", "4_1", "6_2", "7_5", "8_19", "9_42"}) {
    const auto d = corpus_knot(name).diagram;
    INFO(name);
    for (Field f : {Field::rationals(), Field::prime(2)}) {
      const auto ref = homology_dims(d, f);
      for (int e = 1; e <= d.edge_count(); e += 3) CHECK(homology_dims(d.with_basepoint(e), f) == ref);
      CHECK(homology_dims(khtest::relabel(d, 3), f) == ref);
      for (int k = 0; k < 4; ++k) CHECK(homology_dims(khtest::add_kink(d, 2, k), f) == ref);
      for (int s = 0; s < 4; ++s) {
        CHECK(homology_dims(khtest::add_r2(d, 1, s, true), f) == ref);
        CHECK(homology_dims(khtest::add_r2(d, 0, s, false), f) == ref);
      }
    }
  }
  // Enlarged diagrams still agree with the cube.
  const auto big = khtest::add_r2(khtest::add_kink(corpus_knot("5_2").diagram, 4, 1), 2, 1, true);
  CHECK(homology_dims(big, Field::prime(2)) == homology_dims(big, Field::prime(2), naive()));
}

TEST_CASE("integral homology and universal coefficients") {
  const auto t45 = khtest::torus_knot(4, 5);
  const auto ih = integral_homology(t45);
  std::size_t twos = 0;
  for (const auto& [g, v] : ih.torsion)
    for (const auto& t : v) {
      CHECK(t == 2);
      ++twos;
    }
  CHECK(twos == 2);
  const auto c2 = compare_fields(t45, 2);
  CHECK(c2.consistent);
  CHECK(c2.dim_fp == c2.dim_q + 2 * c2.torsion_count);
  CHECK(c2.dim_fp > c2.dim_q);
  const auto c3 = compare_fields(t45, 3);
  CHECK(c3.consistent);
  CHECK(c3.dim_fp == c3.dim_q);
  for (const auto& k : khtest::corpus(9)) {
    INFO(k.name);
    CHECK(compare_fields(k.diagram, 2).consistent);
  }
}

TEST_CASE("serialisation and delta gradings") {
  const auto b = homology_dims(corpus_knot("8_19").diagram, Field::prime(2));
  CHECK(BigradedDims::from_text(b.to_text()) == b);
  CHECK_THROWS_AS(BigradedDims::from_text("{\"field\":\"Q\",\"dims\":[[0,0]]}"), ParseError);
  CHECK_THROWS_AS(delta_support(dims_of({{0, 1, 1}})), DomainError);
  const auto d = delta_support(dims_of({{0, 0, 1}, {1, 6, 2}, {-1, 2, 1}}));
  CHECK(d.to_string() == "{0:1, 2:3}");
  CHECK(d.single_parity());
  CHECK_FALSE(delta_support(dims_of({{0, 0, 1}, {0, 2, 1}})).single_parity());
}

TEST_CASE("resource caps") {
  const auto d = corpus_knot("9_1").diagram;
  HomologyOptions o;
  o.max_crossings = 8;
  CHECK_THROWS_AS(homology_dims(d, Field::rationals(), o), ResourceError);
  o.max_crossings = 0;
  o.naive = true;
  o.max_naive_crossings = 6;
  CHECK_THROWS_AS(homology_dims(d, Field::rationals(), o), ResourceError);
  HomologyOptions tiny;
  tiny.max_objects = 2;
  CHECK_THROWS_AS(homology_dims(d, Field::rationals(), tiny), ResourceError);
}
