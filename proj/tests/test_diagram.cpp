#include <random>

#include "doctest.h"
#include "khdetect/errors.hpp"
#include "khdetect/knotpoly.hpp"
#include "oracles.hpp"

using namespace khdetect;
using khtest::corpus_knot;

TEST_CASE("PD text and crossing lists parse to the same diagram") {
  const auto a = parse_pd("PD[X[6,3,1,4],X[4,1,5,2],X[2,5,3,6]]");
  const auto b = parse_pd(" PD [ X[6, 3, 1, 4] ,\n X[4,1,5,2], X[ 2,5,3,6 ] ] ");
  const auto c = parse_pd("[[6,3,1,4],[4,1,5,2],[2,5,3,6]]");
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.crossing_count() == 3);
  CHECK(parse_pd(to_pd_string(a)) == a);
  CHECK(parse_pd(to_pd_json(a)) == a);
  CHECK(parse_pd("PD[]").crossing_count() == 0);
  CHECK(parse_pd("[]").crossing_count() == 0);
}

TEST_CASE("malformed text is a parse error") {
  for (const char* s : {"", "PD[", "PD[X[1,2,3]]", "PD[X[1,2,3,4,5]]", "PD[X[1,2,3,4]] junk", "PD[X[a,b,c,d]]",
                        "[[1,2,3]]", "{\"x\":1}", "PD[X[1,1,2,2],]"})
    CHECK_THROWS_AS(parse_pd(s), ParseError);
}

TEST_CASE("invalid diagrams are rejected") {
  CHECK_THROWS_AS(parse_pd("PD[X[1,2,3,4]]"), ValidationError);          // labels beyond 2n
  CHECK_THROWS_AS(parse_pd("PD[X[1,1,1,1]]"), ValidationError);          // each label twice
  CHECK_THROWS_AS(parse_pd("PD[X[0,1,1,0]]"), ValidationError);
  CHECK_THROWS_AS(parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]"), ValidationError);  // not planar
  // Hopf link: two components.
  CHECK_THROWS_AS(parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]"), LinkError);
  // Labels valid but not consecutive along the strand.
  CHECK_THROWS_AS(parse_pd("PD[X[6,3,1,4],X[4,1,5,2],X[2,6,3,5]]"), ValidationError);
}

TEST_CASE("one-crossing kinks are valid unknot diagrams") {
  for (const char* s : {"PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]", "PD[X[2,2,1,1]]", "PD[X[2,1,1,2]]"}) {
    const auto d = parse_pd(s);
    CHECK(d.crossing_count() == 1);
    CHECK(std::abs(d.writhe()) == 1);
  }
}

TEST_CASE("signs, writhe and mirror") {
  const auto t = corpus_knot("3_1").diagram;  // the table's trefoil is left-handed
  CHECK(t.writhe() == -3);
  CHECK(t.negative_count() == 3);
  const auto m = mirror(t);
  CHECK(m.writhe() == 3);
  CHECK(m.positive_count() == 3);
  CHECK(mirror(m) == t);
  const auto f = corpus_knot("4_1").diagram;
  CHECK(f.writhe() == 0);
  CHECK(mirror(f).writhe() == 0);
  CHECK(khtest::torus_knot(2, 5).writhe() == 5);
  CHECK(khtest::torus_knot(3, 4).writhe() == 8);
}

TEST_CASE("basepoint") {
  const auto d = corpus_knot("5_2").diagram;
  CHECK(d.basepoint_edge() == 1);
  const auto e = d.with_basepoint(7);
  CHECK(e.basepoint_edge() == 7);
  CHECK(e.crossings() == d.crossings());
  CHECK_THROWS_AS(d.with_basepoint(0), ValidationError);
  CHECK_THROWS_AS(d.with_basepoint(11), ValidationError);
}

TEST_CASE("pretzel diagrams") {
  const auto t = pretzel_diagram(1, 1, 1);
  CHECK(t.crossing_count() == 3);
  CHECK(t.writhe() == 3);  // right-handed trefoil
  CHECK(pretzel_diagram(-1, -1, -1).writhe() == -3);
  const auto six = pretzel_diagram(-3, 3, 1);
  CHECK(six.crossing_count() == 7);
  CHECK(alexander_fox(six) == LaurentPoly{{-1, -2}, {0, 5}, {1, -2}});
  CHECK(alexander_fox(pretzel_diagram(-3, 3, 3)) == LaurentPoly{{-1, -2}, {0, 5}, {1, -2}});
  CHECK(alexander_fox(pretzel_diagram(-3, 5, 7)).to_string() == "1");
  CHECK_THROWS_AS(pretzel_diagram(2, 2, 1), LinkError);
  CHECK_THROWS_AS(pretzel_diagram(100, 100, 1), ResourceError);
}

TEST_CASE("diagram builder") {
  // One-crossing kink: slot 1 joined to 2, slot 3 to 0.
  DiagramBuilder b;
  const int c = b.add_crossing();
  b.connect(c, 1, c, 2);
  b.connect(c, 3, c, 0);
  const auto d = b.build();
  CHECK(d.crossing_count() == 1);
  DiagramBuilder open;
  open.add_crossing();
  CHECK_THROWS_AS(open.build(), ValidationError);
}

TEST_CASE("R1, R2 and relabelling produce valid diagrams") {
  const auto d = corpus_knot("6_2").diagram;
  for (int e = 1; e <= d.edge_count(); ++e)
    for (int k = 0; k < 4; ++k) CHECK(khtest::add_kink(d, e, k).crossing_count() == 7);
  for (std::size_t c = 0; c < d.crossing_count(); ++c)
    for (int s = 0; s < 4; ++s) {
      CHECK(khtest::add_r2(d, c, s, true).writhe() == d.writhe());
      CHECK(khtest::add_r2(d, c, s, false).writhe() == d.writhe());
    }
  CHECK(khtest::relabel(d, 5).writhe() == d.writhe());
}

TEST_CASE("mutation fuzz: the parser only ever throws parse or validation errors") {
  std::mt19937 rng(20261019);
  const std::string alphabet = "PDX[],0123456789 -{}\"";
  std::vector<std::string> seeds;
  for (const char* n : {"3_1", "4_1", "7_4", "8_19", "9_42"}) seeds.push_back(to_pd_string(corpus_knot(n).diagram));
  seeds.push_back(to_pd_json(corpus_knot("5_2").diagram));
  int accepted = 0, rejected = 0;
  for (int iter = 0; iter < 4000; ++iter) {
    std::string s = seeds[rng() % seeds.size()];
    const int edits = 1 + rng() % 3;
    for (int k = 0; k < edits && !s.empty(); ++k) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 4) {
        case 0: s.erase(pos, 1); break;
        case 1: s.insert(s.begin() + pos, alphabet[rng() % alphabet.size()]); break;
        case 2: s[pos] = alphabet[rng() % alphabet.size()]; break;
        default: std::swap(s[pos], s[rng() % s.size()]); break;
      }
    }
    try {
      const auto d = parse_pd(s);
      CHECK(parse_pd(to_pd_string(d)) == d);
      ++accepted;
    } catch (const ParseError&) {
      ++rejected;
    } catch (const ValidationError&) {
      ++rejected;
    }
  }
  CHECK(rejected > 0);
  MESSAGE("fuzz accepted " << accepted << ", rejected " << rejected);
}
