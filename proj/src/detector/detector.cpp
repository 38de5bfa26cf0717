#include "khdetect/detector.hpp"

#include "json.hpp"
#include "khdetect/errors.hpp"
#include "khdetect/knotpoly.hpp"

namespace khdetect {

namespace {

const char* const kConvention =
    "delta = q/2 - h; the right-handed (positive) trefoil has delta-support {1} and the positive torus knot "
    "T(2,5) has delta-support {2}. CinquefoilPositive means T(2,5) in this convention; tables using the "
    "opposite chirality convention see the mirror verdict.";

const char* const kNearlyFiberedCaveat =
    "Conditional: the narrowing assumes dim KHI(K,1) = 2 (K nearly fibered), an instanton Floer statement this "
    "toolkit cannot compute. Candidates are consistent with the computed invariants, not detected, and are "
    "listed up to mirror image.";

const LaurentPoly& alex_52() {
  static const LaurentPoly p{{-1, 2}, {0, -3}, {1, 2}};
  return p;
}

const LaurentPoly& alex_61() {
  static const LaurentPoly p{{-1, -2}, {0, 5}, {1, -2}};
  return p;
}

const LaurentPoly& alex_genus4() {
  static const LaurentPoly p{{-4, 1}, {-3, -1}, {0, 1}, {3, -1}, {4, 1}};
  return p;
}

bool thin_at(const BigradedDims& b, std::size_t dim, int& delta) {
  if (b.total() != dim) return false;
  const DeltaSupport s = delta_support(b);
  if (!s.single()) return false;
  delta = s.multiplicity.begin()->first;
  return true;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::FigureEight: return "FigureEight";
    case Verdict::CinquefoilPositive: return "CinquefoilPositive";
    case Verdict::CinquefoilNegative: return "CinquefoilNegative";
    case Verdict::ImpossibleByThinness: return "ImpossibleByThinness";
    case Verdict::MainOtherProfile: return "MainOtherProfile";
    case Verdict::NearlyFiberedCandidates: return "NearlyFiberedCandidates";
    case Verdict::NoVerdict: return "NoVerdict";
  }
  return "NoVerdict";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::FigureEight, Verdict::CinquefoilPositive, Verdict::CinquefoilNegative,
                    Verdict::ImpossibleByThinness, Verdict::MainOtherProfile, Verdict::NearlyFiberedCandidates,
                    Verdict::NoVerdict})
    if (to_string(v) == s) return v;
  throw ParseError("unknown verdict '" + s + "'");
}

CandidateList narrow_candidates(const LaurentPoly& alex, std::size_t dim_q) {
  struct Entry {
    const char* name;
    std::size_t dim;
  };
  std::vector<Entry> table;
  if (alex == alex_52())
    table = {{"5_2", 7}, {"15n43522", 17}, {"16n696530", 25}};
  else if (alex == alex_61())
    table = {{"P(-3,3,2n+1)", 9}, {"15n115646", 23}};
  CandidateList out;
  if (table.empty()) return out;
  for (const auto& e : table)
    if (e.dim == dim_q) out.candidates.push_back(e.name);
  out.caveat = kNearlyFiberedCaveat;
  return out;
}

KnotInvariants compute_invariants(const PlanarDiagram& d, const HomologyOptions& opt) {
  KnotInvariants inv;
  inv.kh_q = homology_dims(d, Field::rationals(), opt);
  inv.kh_f2 = homology_dims(d, Field::prime(2), opt);
  inv.jones = jones_from_kh(inv.kh_q);
  inv.alexander = alexander_fox(d);
  inv.det = determinant_from_alexander(inv.alexander);
  if (determinant_from_jones(inv.jones) != inv.det)
    throw InternalError("determinant from the Jones polynomial disagrees with the Alexander polynomial");
  return inv;
}

DetectionReport detect_from_invariants(const KnotInvariants& inv, const std::string& name,
                                       const std::string& diagram) {
  DetectionReport r;
  r.name = name;
  r.diagram = diagram;
  r.dim_q = inv.kh_q.total();
  r.dim_f2 = inv.kh_f2.total();
  r.delta_support = delta_support(inv.kh_q);
  r.det = inv.det;
  r.jones = inv.jones;
  r.alexander = inv.alexander;
  r.s_thin = s_from_thin(inv.kh_q);
  r.convention_note = kConvention;

  // Both thin rules hold over any field; Q is tried first, then F2.
  int delta = 0;
  const bool thin5 = thin_at(inv.kh_q, 5, delta) || thin_at(inv.kh_f2, 5, delta);
  if (thin5 && delta == 0) {
    r.verdict = Verdict::FigureEight;
    r.rule = "5-dimensional reduced Khovanov homology supported in delta-grading 0 detects the figure eight knot";
    r.inferred_facts.push_back({"s(K) = 0", "thin knots have s = 2*delta"});
  } else if (thin5 && (delta == 2 || delta == -2)) {
    r.verdict = delta > 0 ? Verdict::CinquefoilPositive : Verdict::CinquefoilNegative;
    r.rule = "5-dimensional reduced Khovanov homology supported in a single delta-grading +-2 detects the "
             "cinquefoils T(+-2,5)";
    r.inferred_facts.push_back({std::string("s(K) = ") + (delta > 0 ? "4" : "-4"), "thin knots have s = 2*delta"});
    r.inferred_facts.push_back({"Seifert genus 2, fibered",
                                "genus of an instanton L-space knot equals |s|/2; T(2,5) is fibered of genus 2"});
  } else if (thin5) {
    r.verdict = Verdict::ImpossibleByThinness;
    r.rule = "no knot has 5-dimensional reduced Khovanov homology in a single delta-grading other than 0 or +-2";
    r.inferred_facts.push_back(
        {"would force s = " + std::to_string(2 * delta) + " and Seifert genus " + std::to_string(std::abs(delta)),
         "for dim 5 and det != 1, s = +-2g(K) by strong quasipositivity of instanton L-space knots"});
    r.inferred_facts.push_back({"genus must then be 4, and a genus-4 knot of this kind is never delta-thin",
                                "classification of the remaining determinant-5 profile; its genus-4 knots are "
                                "not supported in a single delta-grading"});
  } else if (r.dim_f2 == 5 && r.det == 5 && !r.delta_support.single() && r.delta_support.single_parity()) {
    r.verdict = Verdict::MainOtherProfile;
    r.rule = "dim over Z/2 equal to 5 and det = 5 outside the figure eight and cinquefoils";
    const char* cite =
        "classification of knots with 5-dimensional reduced Khovanov homology over Z/2 and determinant 5 "
        "(other than the figure eight and cinquefoils)";
    r.inferred_facts = {{"hyperbolic", cite},
                        {"Seifert genus 4", cite},
                        {"Alexander polynomial " + alex_genus4().to_string(), cite},
                        {"K or its mirror is an instanton L-space knot", cite},
                        {"fibered", cite},
                        {"strongly quasipositive up to mirror", cite},
                        {"signature +-8", cite}};
    if (!inv.alexander.is_zero() && inv.alexander != alex_genus4())
      r.inferred_facts.push_back({"computed Alexander polynomial " + inv.alexander.to_string() +
                                      " contradicts the predicted one; the input cannot be a knot",
                                  cite});
  } else {
    CandidateList c = narrow_candidates(inv.alexander, r.dim_q);
    if (!c.caveat.empty()) {
      r.verdict = Verdict::NearlyFiberedCandidates;
      r.rule = "genus-1 Alexander polynomial of a nearly fibered knot profile, narrowed by dim Kh(Q)";
      r.candidates = std::move(c);
    } else {
      r.verdict = Verdict::NoVerdict;
      r.rule = "no detection statement applies";
    }
  }
  r.check();
  return r;
}

DetectionReport detect(const PlanarDiagram& d, const std::string& name, const HomologyOptions& opt) {
  return detect_from_invariants(compute_invariants(d, opt), name, to_pd_string(d));
}

void DetectionReport::check() const {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw InternalError("detection report for '" + name + "' violates: " + what);
  };
  DeltaSupport five0;
  five0.multiplicity[0] = 5;
  switch (verdict) {
    case Verdict::FigureEight:
      need(dim_q == 5 && delta_support.multiplicity == five0.multiplicity, "FigureEight needs dim 5, delta {0:5}");
      break;
    case Verdict::CinquefoilPositive:
      need(dim_q == 5 && delta_support.single() && delta_support.multiplicity.count(2),
           "CinquefoilPositive needs dim 5, delta {2:5}");
      break;
    case Verdict::CinquefoilNegative:
      need(dim_q == 5 && delta_support.single() && delta_support.multiplicity.count(-2),
           "CinquefoilNegative needs dim 5, delta {-2:5}");
      break;
    case Verdict::NearlyFiberedCandidates:
      need(!candidates.caveat.empty(), "candidate lists carry the conditional caveat");
      break;
    default: break;
  }
  for (const auto& f : inferred_facts) need(!f.citation.empty(), "every inferred fact has a citation");
}

std::string DetectionReport::to_text() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["diagram"] = diagram;
  j["dim_Q"] = dim_q;
  j["dim_F2"] = dim_f2;
  auto ds = nlohmann::json::array();
  for (const auto& [d, m] : delta_support.multiplicity) ds.push_back({d, m});
  j["delta_support"] = ds;
  j["det"] = det.get_str();
  j["jones"] = jones.to_string();
  j["alexander"] = alexander.to_string();
  j["s_thin"] = s_thin ? nlohmann::ordered_json(*s_thin) : nlohmann::ordered_json(nullptr);
  j["verdict"] = to_string(verdict);
  j["rule"] = rule;
  j["candidates"] = candidates.candidates;
  j["candidate_caveat"] = candidates.caveat;
  auto facts = nlohmann::ordered_json::array();
  for (const auto& f : inferred_facts)
    facts.push_back(nlohmann::ordered_json{{"claim", f.claim}, {"citation", f.citation}, {"status", "theorem-derived"}});
  j["inferred_facts"] = facts;
  j["convention_note"] = convention_note;
  return j.dump(2);
}

}  // namespace khdetect
