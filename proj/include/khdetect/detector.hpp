#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khdetect/diagram.hpp"
#include "khdetect/khovanov.hpp"
#include "khdetect/laurent_poly.hpp"

namespace khdetect {

enum class Verdict {
  FigureEight,
  CinquefoilPositive,
  CinquefoilNegative,
  ImpossibleByThinness,
  MainOtherProfile,
  NearlyFiberedCandidates,
  NoVerdict,
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);  // throws ParseError

// A conclusion that follows from a published theorem given the computed
// invariants; never something this toolkit computes itself.
struct InferredFact {
  std::string claim;
  std::string citation;
};

struct CandidateList {
  std::vector<std::string> candidates;  // up to mirror image
  std::string caveat;                   // empty only when candidates is empty
};

// Everything the rules look at. detect() fills this from a diagram; tests
// and tools can also build it directly.
struct KnotInvariants {
  BigradedDims kh_q;
  BigradedDims kh_f2;
  mpz_class det;
  LaurentPoly jones;
  LaurentPoly alexander;
};

KnotInvariants compute_invariants(const PlanarDiagram& d, const HomologyOptions& opt = {});

struct DetectionReport {
  std::string name;
  std::string diagram;
  std::size_t dim_q = 0;
  std::size_t dim_f2 = 0;
  DeltaSupport delta_support;  // over Q
  mpz_class det;
  LaurentPoly jones;
  LaurentPoly alexander;
  std::optional<int> s_thin;
  Verdict verdict = Verdict::NoVerdict;
  std::string rule;  // which detection statement fired, described in words
  CandidateList candidates;
  std::vector<InferredFact> inferred_facts;
  std::string convention_note;

  // Stable field order.
  std::string to_text() const;
  // Throws InternalError if a verdict contradicts its defining invariants.
  void check() const;
};

// alex must be normalised. Empty list unless alex is 2t-3+2t^-1 or -2t+5-2t^-1.
CandidateList narrow_candidates(const LaurentPoly& alex, std::size_t dim_q);

DetectionReport detect_from_invariants(const KnotInvariants& inv, const std::string& name = "",
                                       const std::string& diagram = "");
DetectionReport detect(const PlanarDiagram& d, const std::string& name = "", const HomologyOptions& opt = {});

}  // namespace khdetect
