#include <set>
#include <sstream>

#include "graded_complex.hpp"
#include "json.hpp"
#include "khdetect/errors.hpp"
#include "khdetect/khovanov.hpp"

namespace khdetect {

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p) || p > 97) throw DomainError("field characteristic must be a prime <= 97, got " + std::to_string(p));
  return {false, p};
}

Field Field::parse(const std::string& s) {
  if (s == "Q" || s == "q" || s == "QQ") return rationals();
  std::string digits = s;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'f')) digits = digits.substr(1);
  if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("unknown field '" + s + "' (expected Q or Fp with p prime <= 97)");
  return prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string Field::name() const { return rational ? "Q" : "F" + std::to_string(p); }

std::size_t BigradedDims::total() const {
  std::size_t t = 0;
  for (const auto& [hq, v] : dims) t += v;
  return t;
}

std::size_t BigradedDims::at(int h, int q) const {
  auto it = dims.find({h, q});
  return it == dims.end() ? 0 : it->second;
}

std::string BigradedDims::to_text() const {
  nlohmann::ordered_json j;
  j["field"] = field.name();
  j["dims"] = nlohmann::json::array();
  for (const auto& [hq, v] : dims) j["dims"].push_back({hq.first, hq.second, v});
  return j.dump();
}

BigradedDims BigradedDims::from_text(const std::string& text) {
  BigradedDims b;
  try {
    const auto j = nlohmann::json::parse(text);
    b.field = Field::parse(j.at("field").get<std::string>());
    for (const auto& t : j.at("dims")) {
      const auto v = t.at(2).get<std::size_t>();
      if (v) b.dims[{t.at(0).get<int>(), t.at(1).get<int>()}] = v;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed bigraded dimensions: ") + e.what());
  }
  return b;
}

bool DeltaSupport::single_parity() const {
  if (multiplicity.empty()) return true;
  const int parity = ((multiplicity.begin()->first % 2) + 2) % 2;
  for (const auto& [d, m] : multiplicity)
    if (((d % 2) + 2) % 2 != parity) return false;
  return true;
}

std::string DeltaSupport::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [d, m] : multiplicity) {
    os << (first ? "" : ", ") << d << ':' << m;
    first = false;
  }
  os << '}';
  return os.str();
}

DeltaSupport delta_support(const BigradedDims& b) {
  DeltaSupport s;
  for (const auto& [hq, v] : b.dims) {
    if (hq.second % 2) throw DomainError("odd quantum grading " + std::to_string(hq.second) + " in knot homology");
    s.multiplicity[hq.second / 2 - hq.first] += v;
  }
  return s;
}

namespace {

void check_limits(const PlanarDiagram& d, const HomologyOptions& opt) {
  const int n = static_cast<int>(d.crossing_count());
  if (opt.max_crossings > 0 && n > opt.max_crossings)
    throw ResourceError(std::to_string(n) + " crossings exceeds the cap of " + std::to_string(opt.max_crossings));
  if (opt.naive && n > opt.max_naive_crossings)
    throw ResourceError("naive cube limited to " + std::to_string(opt.max_naive_crossings) + " crossings");
}

detail::GradedComplex build(const PlanarDiagram& d, ScalarDomain domain, const HomologyOptions& opt) {
  check_limits(d, opt);
  if (opt.naive) return detail::naive_cube(d, domain);
  detail::ScanLimits lim{opt.max_objects};
  if (domain.kind == ScalarKind::PrimeField) return detail::scan_mod_p(d, domain.p, lim);
  return detail::scan_integral(d, lim);
}

std::size_t rank_of(const detail::GradedComplex& c, int h, int q, ScalarDomain field) {
  auto it = c.d.find({h, q});
  if (it == c.d.end()) return 0;
  return rank(it->second.domain() == field ? it->second : it->second.over(field));
}

BigradedDims dims_over(const detail::GradedComplex& c, Field field) {
  const ScalarDomain dom = field.rational ? ScalarDomain::rationals() : ScalarDomain::prime_field(field.p);
  BigradedDims b;
  b.field = field;
  for (const auto& [hq, r] : c.rank) {
    const auto [h, q] = hq;
    const std::size_t out = rank_of(c, h, q, dom);
    const std::size_t in = rank_of(c, h - 1, q, dom);
    if (out + in > r) throw InternalError("differential ranks exceed chain rank");
    if (r - out - in) b.dims[hq] = r - out - in;
  }
  return b;
}

IntegralHomology integral_from(const detail::GradedComplex& c) {
  IntegralHomology ih;
  const auto rat = dims_over(c, Field::rationals());
  ih.free_rank = rat.dims;
  for (const auto& [hq, m] : c.d) {
    for (const auto& f : smith_normal_form(m))
      if (f > 1) ih.torsion[{hq.first + 1, hq.second}].push_back(f);
  }
  return ih;
}

}  // namespace

BigradedDims homology_dims(const PlanarDiagram& d, Field field, const HomologyOptions& opt) {
  const ScalarDomain dom = field.rational ? ScalarDomain::integers() : ScalarDomain::prime_field(field.p);
  return dims_over(build(d, dom, opt), field);
}

IntegralHomology integral_homology(const PlanarDiagram& d, const HomologyOptions& opt) {
  return integral_from(build(d, ScalarDomain::integers(), opt));
}

FieldComparison compare_fields(const PlanarDiagram& d, std::uint32_t p, const HomologyOptions& opt) {
  FieldComparison fc;
  fc.p = p;
  const Field fp = Field::prime(p);
  const auto integral = build(d, ScalarDomain::integers(), opt);
  fc.over_q = dims_over(integral, Field::rationals());
  const IntegralHomology ih = integral_from(integral);
  fc.over_fp = homology_dims(d, fp, opt);
  for (const auto& [hq, fs] : ih.torsion) {
    std::size_t t = 0;
    for (const auto& f : fs)
      if (mpz_divisible_ui_p(f.get_mpz_t(), p)) ++t;
    if (t) fc.torsion_p[hq] = t;
  }
  fc.dim_q = fc.over_q.total();
  fc.dim_fp = fc.over_fp.total();
  for (const auto& [hq, t] : fc.torsion_p) fc.torsion_count += t;

  std::set<Bigrading> keys;
  for (const auto& [hq, v] : fc.over_q.dims) keys.insert(hq);
  for (const auto& [hq, v] : fc.over_fp.dims) keys.insert(hq);
  for (const auto& [hq, v] : fc.torsion_p) {
    keys.insert(hq);
    keys.insert({hq.first - 1, hq.second});
  }
  auto tp = [&](int h, int q) {
    auto it = fc.torsion_p.find({h, q});
    return it == fc.torsion_p.end() ? std::size_t(0) : it->second;
  };
  for (const auto& [h, q] : keys) {
    const std::size_t expect = fc.over_q.at(h, q) + tp(h, q) + tp(h + 1, q);
    if (fc.over_fp.at(h, q) != expect)
      fc.mismatches.push_back("(h,q)=(" + std::to_string(h) + "," + std::to_string(q) + "): dim F" +
                              std::to_string(p) + " = " + std::to_string(fc.over_fp.at(h, q)) + ", expected " +
                              std::to_string(expect));
  }
  if (fc.dim_fp != fc.dim_q + 2 * fc.torsion_count) fc.mismatches.push_back("total dimensions violate dim_Fp = dim_Q + 2 t_p");
  fc.consistent = fc.mismatches.empty();
  return fc;
}

}  // namespace khdetect
