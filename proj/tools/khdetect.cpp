// khdetect command-line tool. Exit codes: 0 ok, 1 parse/usage/unreadable
// input, 2 validation, 3 resource, 4 internal.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "khdetect/census.hpp"
#include "khdetect/cyclotomic.hpp"
#include "khdetect/detector.hpp"
#include "khdetect/errors.hpp"
#include "khdetect/knotpoly.hpp"

using namespace khdetect;

namespace {

std::string read_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw ParseError("cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Coefficient list "[c0, c1, ...]" (constant first) or an expression in t
// with non-negative exponents.
IntPoly read_poly(const std::string& arg) {
  const std::string text = read_arg(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty polynomial");
  IntPoly p;
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad coefficient list: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("coefficient list must be a JSON array");
    for (std::size_t k = 0; k < j.size(); ++k) {
      mpz_class c;
      if (j[k].is_number_integer())
        c = mpz_class(std::to_string(j[k].get<long long>()));
      else if (j[k].is_string() && c.set_str(j[k].get<std::string>(), 10) == 0)
        ;
      else
        throw ParseError("coefficient " + std::to_string(k) + " is not an integer");
      p = p + IntPoly::monomial(c, k);
    }
    return p;
  }
  for (const auto& [e, c] : LaurentPoly::parse(text).pairs()) {
    if (e < 0) throw ParseError("negative exponent in polynomial");
    p = p + IntPoly::monomial(c, static_cast<std::size_t>(e));
  }
  return p;
}

struct Common {
  std::string field = "Q";
  bool json = false;
  bool naive = false;
  int max_crossings = 16;
  std::size_t max_objects = HomologyOptions{}.max_objects;
  HomologyOptions options() const {
    HomologyOptions o;
    o.naive = naive;
    o.max_crossings = max_crossings;
    o.max_objects = max_objects;
    return o;
  }
};

void print_kh(const PlanarDiagram& d, const Common& c) {
  if (c.field == "Z" || c.field == "z") {
    const IntegralHomology ih = integral_homology(d, c.options());
    if (c.json) {
      nlohmann::ordered_json j;
      j["field"] = "Z";
      auto fr = nlohmann::ordered_json::array();
      for (const auto& [g, r] : ih.free_rank) fr.push_back({g.first, g.second, r});
      j["free"] = fr;
      auto tor = nlohmann::ordered_json::array();
      for (const auto& [g, v] : ih.torsion)
        for (const auto& t : v) tor.push_back({g.first, g.second, t.get_str()});
      j["torsion"] = tor;
      std::cout << j.dump() << "\n";
      return;
    }
    std::size_t total = 0;
    for (const auto& [g, r] : ih.free_rank) total += r;
    std::cout << "reduced Kh over Z: free rank " << total << "\n";
    for (const auto& [g, r] : ih.free_rank) std::cout << "  h=" << g.first << " q=" << g.second << "  Z^" << r << "\n";
    for (const auto& [g, v] : ih.torsion)
      for (const auto& t : v) std::cout << "  h=" << g.first << " q=" << g.second << "  Z/" << t << "\n";
    return;
  }
  const BigradedDims b = homology_dims(d, Field::parse(c.field), c.options());
  if (c.json) {
    std::cout << b.to_text() << "\n";
    return;
  }
  std::cout << "reduced Kh over " << b.field.name() << ": dimension " << b.total() << "\n";
  for (const auto& [g, n] : b.dims) std::cout << "  h=" << g.first << " q=" << g.second << "  " << n << "\n";
  std::cout << "delta-support " << delta_support(b).to_string() << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Khovanov homology knot detection toolkit"};
  app.set_version_flag("--version", std::string(KHDETECT_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--field", c.field, "Q, Z or Fp with p prime <= 97 (kh only)");
  app.add_flag("--json", c.json, "structured output");
  app.add_flag("--naive", c.naive, "force the full cube of resolutions");
  app.add_option("--max-crossings", c.max_crossings, "refuse larger diagrams (<= 0 disables)");
  app.add_option("--max-objects", c.max_objects, "cap on intermediate generators during the scan");

  std::string pd;
  auto add_pd = [&](CLI::App* sub) { sub->add_option("pd", pd, "PD code, JSON crossing list or @file")->required(); };
  auto* kh = app.add_subcommand("kh", "reduced Khovanov homology");
  add_pd(kh);
  auto* jones = app.add_subcommand("jones", "Jones polynomial from Khovanov homology");
  add_pd(jones);
  auto* alex = app.add_subcommand("alexander", "Alexander polynomial by Fox calculus");
  add_pd(alex);
  auto* det = app.add_subcommand("det", "knot determinant");
  add_pd(det);
  auto* detect_cmd = app.add_subcommand("detect", "run the detection rules");
  std::string name;
  add_pd(detect_cmd);
  detect_cmd->add_option("--name", name, "label for the report");

  auto* cyclo = app.add_subcommand("cyclo", "cyclotomic polynomial tools");
  cyclo->require_subcommand(1);
  unsigned n = 0;
  std::string poly;
  auto* phi = cyclo->add_subcommand("phi", "print Phi_n");
  phi->add_option("n", n)->required()->check(CLI::Range(1u, 1000000u));
  auto* sv = cyclo->add_subcommand("special-values", "Phi_n(1) and Phi_n(-1)");
  sv->add_option("n", n)->required()->check(CLI::Range(2u, 1000000u));
  auto* gr = cyclo->add_subcommand("graeffe", "one root-squaring step");
  gr->add_option("poly", poly, "[c0, c1, ...], polynomial in t, or @file")->required();
  auto* chk = cyclo->add_subcommand("check", "is the polynomial a product of cyclotomics");
  chk->add_option("poly", poly, "[c0, c1, ...], polynomial in t, or @file")->required();
  auto* scan = cyclo->add_subcommand("scan-ph", "factor p_h = t^4h - t^(4h-1) + t^2h - t + 1 for h <= H");
  scan->add_option("H", n)->required()->check(CLI::Range(1u, 750u));

  auto* census = app.add_subcommand("census", "batch runs over knot tables");
  census->require_subcommand(1);
  std::string csv, store, filter;
  unsigned parallel = 1;
  auto* crun = census->add_subcommand("run", "compute records for a name,pd CSV and append them to a store");
  crun->add_option("csv", csv)->required();
  crun->add_option("store", store)->required();
  app.add_option("--parallel", parallel, "worker threads for census run")->check(CLI::Range(1u, 256u));
  auto* cquery = census->add_subcommand("query", "print stored records matching a filter");
  cquery->add_option("store", store)->required();
  cquery->add_option("filter", filter, "e.g. 'dim_Q == 5 && det == 5'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (kh->parsed()) {
    print_kh(parse_pd(read_arg(pd)), c);
  } else if (jones->parsed()) {
    const auto b = homology_dims(parse_pd(read_arg(pd)), Field::rationals(), c.options());
    const auto v = jones_from_kh(b);
    if (c.json)
      std::cout << nlohmann::ordered_json{{"jones", v.to_string()}}.dump() << "\n";
    else
      std::cout << "V(t) = " << v.to_string() << "\n";
  } else if (alex->parsed()) {
    const auto a = alexander_fox(parse_pd(read_arg(pd)));
    if (c.json)
      std::cout << nlohmann::ordered_json{{"alexander", a.to_string()}}.dump() << "\n";
    else
      std::cout << "Delta(t) = " << a.to_string() << "\n";
  } else if (det->parsed()) {
    const auto dv = determinant_from_alexander(alexander_fox(parse_pd(read_arg(pd))));
    if (c.json)
      std::cout << nlohmann::ordered_json{{"det", dv.get_str()}}.dump() << "\n";
    else
      std::cout << "det = " << dv << "\n";
  } else if (detect_cmd->parsed()) {
    const auto r = detect(parse_pd(read_arg(pd)), name, c.options());
    if (c.json) {
      std::cout << r.to_text() << "\n";
    } else {
      std::cout << "verdict: " << to_string(r.verdict) << "\n"
                << "rule: " << r.rule << "\n"
                << "dim Kh(Q) = " << r.dim_q << ", dim Kh(F2) = " << r.dim_f2 << ", det = " << r.det << "\n"
                << "delta-support " << r.delta_support.to_string() << "\n"
                << "Delta(t) = " << r.alexander.to_string() << "\n"
                << "V(t) = " << r.jones.to_string() << "\n";
      if (r.s_thin) std::cout << "s = " << *r.s_thin << " (thin)\n";
      if (!r.candidates.caveat.empty()) {
        std::cout << "candidates:";
        for (const auto& k : r.candidates.candidates) std::cout << " " << k;
        if (r.candidates.candidates.empty()) std::cout << " (none with this dimension)";
        std::cout << "\n  " << r.candidates.caveat << "\n";
      }
      for (const auto& f : r.inferred_facts) std::cout << "inferred: " << f.claim << "  [" << f.citation << "]\n";
      std::cout << "note: " << r.convention_note << "\n";
    }
  } else if (phi->parsed()) {
    std::cout << cyclotomic_poly(n).to_string() << "\n";
  } else if (sv->parsed()) {
    const auto s = special_values(n);
    std::cout << "Phi_" << n << "(1) = " << s.at_one << ", Phi_" << n << "(-1) = " << s.at_minus_one << "\n";
  } else if (gr->parsed()) {
    const auto g = graeffe_step(read_poly(poly));
    std::cout << (c.json ? g.to_list() : g.to_string()) << "\n";
  } else if (chk->parsed()) {
    const auto f = is_cyclotomic_product(read_poly(poly));
    if (f.is_product())
      std::cout << "cyclotomic product: " << f.to_string() << "\n";
    else
      std::cout << "not a cyclotomic product; cyclotomic part " << (f.factors.empty() ? "1" : f.to_string())
                << ", remainder " << f.remainder.to_string() << "\n";
  } else if (scan->parsed()) {
    const auto rep = verify_p_family(n);
    for (const auto& row : rep.rows) {
      std::cout << "h=" << row.h << ": ";
      if (row.factorization.is_product())
        std::cout << row.factorization.to_string() << "\n";
      else
        std::cout << "not a cyclotomic product"
                  << (row.factorization.factors.empty() ? "" : " (cyclotomic part " + row.factorization.to_string() + ")")
                  << "\n";
    }
    for (const auto& ce : rep.counterexamples) std::cout << "counterexample: " << ce << "\n";
    std::cout << (rep.all_pass() ? "structural checks pass" : "structural checks FAIL") << " for h <= " << n << "\n";
    if (!rep.all_pass()) return 4;
  } else if (crun->parsed()) {
    const auto s = census_run(csv, store, parallel, c.options());
    for (const auto& [k, why] : s.skipped) std::cerr << "skipped " << k << ": " << why << "\n";
    std::cout << "rows " << s.rows << ", written " << s.written << ", skipped " << s.skipped.size() << "\n";
    for (const auto& [v, cnt] : s.per_verdict) std::cout << "  " << v << ": " << cnt << "\n";
  } else if (cquery->parsed()) {
    const auto recs = census_query(store, filter);
    for (const auto& r : recs) std::cout << r.to_line() << "\n";
    std::cerr << recs.size() << " matching record(s)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "invalid diagram: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "bad argument: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
