#pragma once

#include <string>
#include <utility>
#include <vector>

#include "khdetect/int_poly.hpp"

namespace khdetect {

// Phi_n, via the Moebius product of (t^d - 1) over d | n.
IntPoly cyclotomic_poly(unsigned n);

// Euler phi by trial factorisation.
unsigned long euler_phi(unsigned long n);

struct SpecialValues {
  mpz_class at_one;
  mpz_class at_minus_one;
};

// Closed form for (Phi_n(1), Phi_n(-1)), n >= 2, checked against direct
// evaluation; a mismatch throws InternalError.
SpecialValues special_values(unsigned n);

// Root squaring: (-1)^d (p_e(t)^2 - t p_o(t)^2) for p = p_e(t^2) + t p_o(t^2).
IntPoly graeffe_step(const IntPoly& p);

// t^{4h} - t^{4h-1} + t^{2h} - t + 1
IntPoly p_family(unsigned h);
// t^{4h} - t^{4h-1} + 2t^{3h} + t^{2h} + 2t^h - t + 1
IntPoly q_family(unsigned h);

struct CycloFactorization {
  std::vector<std::pair<unsigned, unsigned>> factors;  // (n, multiplicity), n ascending
  IntPoly remainder;

  bool is_product() const { return remainder == IntPoly::from_ints({1}); }
  IntPoly expand() const;
  std::string to_string() const;  // e.g. "Phi_10 * Phi_12"
};

// Strips every cyclotomic factor of p to full multiplicity. Candidates are all
// n <= 2 deg(p)^2 with phi(n) <= deg(p), which is complete because
// phi(n) >= sqrt(n/2). Non-monic input or a non-unit constant term gives no
// factors and p as remainder. Throws ResourceError above degree 3000.
CycloFactorization is_cyclotomic_product(const IntPoly& p);

struct PFamilyRow {
  unsigned h = 0;
  CycloFactorization factorization;
  bool no_odd_factor = true;          // no Phi_n with n odd divides p_h
  bool two_mod_four_ok = true;        // n = 2 mod 4 forces n = 10 and h = 1,2 mod 5
  bool product_shape_ok = true;       // products are Phi_10 times Phi_n, 4 | n, n not 2^e
  bool product_iff_small = true;      // product exactly when h in {1,2}
  bool phi10_divides = false;
};

struct PFamilyReport {
  unsigned h_max = 0;
  std::vector<PFamilyRow> rows;
  std::vector<std::string> counterexamples;
  // Observed (not claimed): Phi_10 | p_h exactly when h = 1,2 mod 5.
  bool phi10_mod5_biconditional = true;

  bool all_pass() const { return counterexamples.empty(); }
};

// Runs the four structural checks on p_1 .. p_{h_max}.
PFamilyReport verify_p_family(unsigned h_max);

}  // namespace khdetect
