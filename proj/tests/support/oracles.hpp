#pragma once

#include <string>
#include <utility>
#include <vector>

#include "khdetect/diagram.hpp"
#include "khdetect/laurent_poly.hpp"

namespace khtest {

using khdetect::LaurentPoly;
using khdetect::PlanarDiagram;

// Jones polynomial by the Kauffman bracket state sum over all 2^n states.
LaurentPoly kauffman_jones(const PlanarDiagram& d);

// Reidemeister I: a kink inserted on edge `edge`; kind 0..3 picks which of
// the four kinks (under/over first pass, loop left/right).
PlanarDiagram add_kink(const PlanarDiagram& d, int edge, int kind);

// Reidemeister II: the edge at `slot` of crossing `c` is pushed across the
// edge at the next counterclockwise slot, inside the face they share. Throws
// std::invalid_argument when the two edges coincide.
PlanarDiagram add_r2(const PlanarDiagram& d, std::size_t c, int slot, bool pushed_strand_over);

// Same diagram with labels rotated by k and the crossing list reversed.
PlanarDiagram relabel(const PlanarDiagram& d, int k);

struct NamedKnot {
  std::string name;
  PlanarDiagram diagram;
};

// The bundled table, optionally restricted by crossing count.
std::vector<NamedKnot> corpus(int max_crossings = 99);
const NamedKnot& corpus_knot(const std::string& name);

// Torus knot T(p,q) as the closure of (s_1 ... s_{p-1})^q; positive crossings.
PlanarDiagram torus_knot(int p, int q);

}  // namespace khtest
