#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace khdetect {

// One crossing of a PD code. Labels are read counterclockwise starting at the
// incoming under-strand, so the under-strand runs e[0] -> e[2]. The over-strand
// runs e[3] -> e[1] at a positive crossing and e[1] -> e[3] at a negative one.
struct Crossing {
  std::array<int, 4> e{};

  bool operator==(const Crossing&) const = default;
};

// A validated knot diagram. Edge i flows into edge i+1 (mod 2n), which fixes
// the orientation; crossing signs are recovered from it.
class PlanarDiagram {
 public:
  PlanarDiagram() = default;  // the 0-crossing unknot

  // Validates and throws ValidationError / LinkError on failure.
  static PlanarDiagram from_crossings(std::vector<Crossing> crossings, int basepoint_edge = 1);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  int edge_count() const { return static_cast<int>(2 * crossings_.size()); }

  int sign(std::size_t i) const { return signs_[i]; }
  int writhe() const;
  int positive_count() const;
  int negative_count() const;

  int basepoint_edge() const { return basepoint_; }
  PlanarDiagram with_basepoint(int edge) const;

  bool operator==(const PlanarDiagram& o) const {
    return crossings_ == o.crossings_ && basepoint_ == o.basepoint_;
  }

 private:
  std::vector<Crossing> crossings_;
  std::vector<int> signs_;
  int basepoint_ = 1;
};

// Accepts `PD[X[a,b,c,d],...]` (whitespace-insensitive) or a JSON-style list of
// 4-element integer arrays. Throws ParseError on malformed text.
PlanarDiagram parse_pd(std::string_view text);

std::string to_pd_string(const PlanarDiagram& d);
std::string to_pd_json(const PlanarDiagram& d);

// Flips every crossing by rotating its tuple one step; writhe negates.
PlanarDiagram mirror(const PlanarDiagram& d);

// Standard three-column pretzel diagram. A positive parameter gives a column of
// twists whose crossings, read from the top, have the NW-SE strand on top; with
// that choice P(1,1,1) is the right-handed (positive) trefoil and
// P(-3,3,1) is 6_1. Throws LinkError if the parameters give a link.
PlanarDiagram pretzel_diagram(int p, int q, int r);

// Assembles a diagram from abstract crossings whose four slots are numbered
// counterclockwise with the under-strand joining slots 0 and 2. Orientation
// and edge labels are assigned by walking the strand that leaves crossing 0
// through slot 2.
class DiagramBuilder {
 public:
  int add_crossing();
  void connect(int c1, int s1, int c2, int s2);
  PlanarDiagram build() const;

 private:
  std::vector<std::array<int, 4>> link_;  // partner half-edge id = 4*c+s, -1 if open
};

}  // namespace khdetect
