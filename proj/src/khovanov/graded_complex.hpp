#pragma once

#include <map>

#include "khdetect/diagram.hpp"
#include "khdetect/exactlinalg.hpp"
#include "khdetect/khovanov.hpp"

namespace khdetect::detail {

// A complex of free modules split by quantum grading, already in the final
// (h, q) normalisation. d.at({h,q}) maps C^{h,q} -> C^{h+1,q}; its rows index
// the target basis.
struct GradedComplex {
  ScalarDomain domain;
  std::map<Bigrading, std::size_t> rank;
  std::map<Bigrading, ExactMatrix> d;
};

struct ScanLimits {
  std::size_t max_objects = 40'000'000;
};

// Scanning construction with delooping and cancellation. The integral
// version runs in checked 64-bit arithmetic and restarts with GMP integers
// if an entry overflows.
GradedComplex scan_integral(const PlanarDiagram& d, const ScanLimits& lim);
GradedComplex scan_mod_p(const PlanarDiagram& d, std::uint32_t p, const ScanLimits& lim);

// Full 2^n cube of enhanced states with the marked circle labelled 1.
GradedComplex naive_cube(const PlanarDiagram& d, ScalarDomain domain);

}  // namespace khdetect::detail
