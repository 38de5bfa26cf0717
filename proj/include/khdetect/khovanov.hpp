#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khdetect/diagram.hpp"

namespace khdetect {

// Coefficient field: Q or F_p with p prime and p <= 97.
struct Field {
  bool rational = true;
  std::uint32_t p = 0;

  static Field rationals() { return {true, 0}; }
  static Field prime(std::uint32_t p);  // throws DomainError
  // "Q", "F2", "F3", ... (also accepts a bare prime like "2")
  static Field parse(const std::string& s);
  std::string name() const;
  bool operator==(const Field&) const = default;
  auto operator<=>(const Field&) const = default;
};

using Bigrading = std::pair<int, int>;  // (h, q)

// Reduced Khovanov homology dimensions. Gradings: the reduced unknot sits at
// (0,0) and delta = q/2 - h; the positive (right-handed) trefoil has
// generators at (0,2), (2,6), (3,8), so positive torus knots have delta >= 0.
struct BigradedDims {
  Field field;
  std::map<Bigrading, std::size_t> dims;  // only positive entries

  std::size_t total() const;
  std::size_t at(int h, int q) const;
  // Field descriptor plus (h, q, dim) triples in lexicographic order, as JSON.
  std::string to_text() const;
  static BigradedDims from_text(const std::string& text);
  bool operator==(const BigradedDims&) const = default;
};

struct DeltaSupport {
  std::map<int, std::size_t> multiplicity;  // delta -> summed dimension

  bool single() const { return multiplicity.size() == 1; }
  bool single_parity() const;
  std::string to_string() const;  // "{0:5}" style
};

// Throws DomainError if some q is odd.
DeltaSupport delta_support(const BigradedDims& b);

struct HomologyOptions {
  bool naive = false;              // force the full cube
  int max_crossings = 16;          // <= 0 disables the cap
  int max_naive_crossings = 14;
  std::size_t max_objects = 40'000'000;  // intermediate generators in the scan
};

BigradedDims homology_dims(const PlanarDiagram& d, Field field, const HomologyOptions& opt = {});

// Integral reduced homology: free rank and torsion invariant factors (> 1)
// per bigrading.
struct IntegralHomology {
  std::map<Bigrading, std::size_t> free_rank;
  std::map<Bigrading, std::vector<mpz_class>> torsion;
};

IntegralHomology integral_homology(const PlanarDiagram& d, const HomologyOptions& opt = {});

struct FieldComparison {
  std::uint32_t p = 2;
  BigradedDims over_q;
  BigradedDims over_fp;
  std::map<Bigrading, std::size_t> torsion_p;  // invariant factors divisible by p, per H^{h,q}
  std::size_t dim_q = 0;
  std::size_t dim_fp = 0;
  std::size_t torsion_count = 0;
  // dim_Fp(h,q) = rank(h,q) + t_p(h,q) + t_p(h+1,q) everywhere, and
  // dim_Fp = dim_Q + 2 t_p in total
  bool consistent = false;
  std::vector<std::string> mismatches;
};

FieldComparison compare_fields(const PlanarDiagram& d, std::uint32_t p, const HomologyOptions& opt = {});

}  // namespace khdetect
