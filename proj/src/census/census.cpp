#include "khdetect/census.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <limits>
#include <optional>
#include <thread>

#include "json.hpp"
#include "khdetect/detector.hpp"
#include "khdetect/errors.hpp"

namespace khdetect {

namespace {

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw ResourceError("integer " + z.get_str() + " does not fit a census record");
  return z.get_si();
}

}  // namespace

std::string toolkit_version() { return KHDETECT_VERSION; }

std::string CensusRecord::to_line() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["pd"] = pd;
  j["dim_Q"] = dim_q;
  j["dim_F2"] = dim_f2;
  j["det"] = det;
  auto ds = nlohmann::ordered_json::array();
  for (const auto& [d, m] : delta_support) ds.push_back({d, m});
  j["delta_support"] = ds;
  j["jones"] = jones;
  j["alexander"] = alexander;
  j["verdict"] = verdict;
  j["compute_time_ms"] = compute_time_ms;
  j["toolkit_version"] = toolkit_version;
  return j.dump();
}

CensusRecord CensusRecord::from_line(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    CensusRecord r;
    r.name = j.at("name").get<std::string>();
    r.pd = j.at("pd").get<std::string>();
    r.dim_q = j.at("dim_Q").get<std::int64_t>();
    r.dim_f2 = j.at("dim_F2").get<std::int64_t>();
    r.det = j.at("det").get<std::int64_t>();
    for (const auto& e : j.at("delta_support")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("delta_support entries are [delta, multiplicity]");
      r.delta_support[e[0].get<int>()] = e[1].get<std::int64_t>();
    }
    r.jones = j.at("jones").get<std::string>();
    r.alexander = j.at("alexander").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    r.compute_time_ms = j.at("compute_time_ms").get<std::int64_t>();
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad census record: ") + e.what());
  }
}

bool CensusRecord::same_invariants(const CensusRecord& o) const {
  CensusRecord a = *this;
  a.compute_time_ms = o.compute_time_ms;
  return a == o;
}

void check_record(const CensusRecord& r) {
  if (r.det < 1 || r.dim_q < 1 || r.dim_f2 < r.dim_q)
    throw InternalError("census record '" + r.name + "' has out-of-range dimensions");
  if (r.det > r.dim_q) throw InternalError("census record '" + r.name + "' has det > dim_Q");
  std::int64_t sum = 0;
  for (const auto& [d, m] : r.delta_support) sum += m;
  if (sum != r.dim_q) throw InternalError("census record '" + r.name + "' delta-support does not sum to dim_Q");
  verdict_from_string(r.verdict);
}

CensusRecord compute_record(const std::string& name, const std::string& pd, const HomologyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const PlanarDiagram d = parse_pd(pd);
  const DetectionReport rep = detect(d, name, opt);
  CensusRecord r;
  r.name = name;
  r.pd = to_pd_string(d);
  r.dim_q = static_cast<std::int64_t>(rep.dim_q);
  r.dim_f2 = static_cast<std::int64_t>(rep.dim_f2);
  r.det = to_i64(rep.det);
  for (const auto& [dl, m] : rep.delta_support.multiplicity) r.delta_support[dl] = static_cast<std::int64_t>(m);
  r.jones = rep.jones.to_string();
  r.alexander = rep.alexander.to_string();
  r.verdict = to_string(rep.verdict);
  r.toolkit_version = toolkit_version();
  r.compute_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  check_record(r);
  return r;
}

std::vector<CsvRow> read_csv(std::istream& in) {
  // Whole-table state machine so quoted fields may hold commas, quotes and
  // newlines.
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char c;
  auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    if (!(row.size() == 1 && row[0].empty())) table.push_back(std::move(row));
    row.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      end_row();
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field");
  if (any || !field.empty()) end_row();
  if (table.empty()) throw ParseError("CSV has no header");
  const auto& hdr = table.front();
  if (hdr.size() != 2 || hdr[0] != "name" || hdr[1] != "pd") throw ParseError("CSV header must be 'name,pd'");
  std::vector<CsvRow> out;
  for (std::size_t i = 1; i < table.size(); ++i) {
    auto& f = table[i];
    if (f.size() < 2) {
      out.push_back({f[0], "", "CSV row " + std::to_string(i + 1) + " has no pd field"});
      continue;
    }
    std::string pd = f[1];
    for (std::size_t k = 2; k < f.size(); ++k) pd += "," + f[k];
    out.push_back({f[0], pd, ""});
  }
  return out;
}

CensusSummary census_compute(const std::vector<CsvRow>& rows, unsigned parallelism, const HomologyOptions& opt,
                             std::vector<CensusRecord>& out) {
  std::vector<std::optional<CensusRecord>> done(rows.size());
  std::vector<std::string> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) {
      if (!rows[i].error.empty()) {
        errors[i] = rows[i].error;
        continue;
      }
      try {
        done[i] = compute_record(rows[i].name, rows[i].pd, opt);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(rows.size())));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  CensusSummary s;
  s.rows = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (done[i]) {
      ++s.per_verdict[done[i]->verdict];
      out.push_back(std::move(*done[i]));
      ++s.written;
    } else {
      s.skipped.emplace_back(rows[i].name, errors[i]);
    }
  }
  return s;
}

CensusSummary census_run(const std::string& input_csv, const std::string& output_path, unsigned parallelism,
                         const HomologyOptions& opt) {
  std::ifstream in(input_csv);
  if (!in) throw Error("cannot read " + input_csv);
  const auto rows = read_csv(in);
  std::vector<CensusRecord> recs;
  CensusSummary s = census_compute(rows, parallelism, opt, recs);
  std::ofstream out(output_path, std::ios::app);
  if (!out) throw Error("cannot append to " + output_path);
  for (const auto& r : recs) out << r.to_line() << '\n';
  out.flush();
  if (!out) throw Error("write to " + output_path + " failed");
  return s;
}

std::vector<CensusRecord> read_store(const std::string& store_path) {
  std::vector<CensusRecord> out;
  std::ifstream in(store_path);
  if (!in) return out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.empty() || line == "\r") continue;
    try {
      out.push_back(CensusRecord::from_line(line));
    } catch (const ParseError& e) {
      throw ParseError(store_path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

// ---- filter language

namespace {

enum class FieldType { Int, Text };

const std::map<std::string, FieldType>& filter_fields() {
  static const std::map<std::string, FieldType> f = {
      {"name", FieldType::Text},          {"pd", FieldType::Text},
      {"dim_Q", FieldType::Int},          {"dim_F2", FieldType::Int},
      {"det", FieldType::Int},            {"jones", FieldType::Text},
      {"alexander", FieldType::Text},     {"verdict", FieldType::Text},
      {"compute_time_ms", FieldType::Int}, {"toolkit_version", FieldType::Text},
      {"delta_min", FieldType::Int},      {"delta_max", FieldType::Int},
      {"delta_count", FieldType::Int},
  };
  return f;
}

struct Value {
  bool is_int;
  std::int64_t num;
  std::string text;
};

Value field_value(const CensusRecord& r, const std::string& f) {
  auto num = [](std::int64_t v) { return Value{true, v, {}}; };
  auto txt = [](const std::string& v) { return Value{false, 0, v}; };
  if (f == "name") return txt(r.name);
  if (f == "pd") return txt(r.pd);
  if (f == "dim_Q") return num(r.dim_q);
  if (f == "dim_F2") return num(r.dim_f2);
  if (f == "det") return num(r.det);
  if (f == "jones") return txt(r.jones);
  if (f == "alexander") return txt(r.alexander);
  if (f == "verdict") return txt(r.verdict);
  if (f == "compute_time_ms") return num(r.compute_time_ms);
  if (f == "toolkit_version") return txt(r.toolkit_version);
  // An empty support (never persisted) reads as zero.
  if (f == "delta_min") return num(r.delta_support.empty() ? 0 : r.delta_support.begin()->first);
  if (f == "delta_max") return num(r.delta_support.empty() ? 0 : r.delta_support.rbegin()->first);
  if (f == "delta_count") return num(static_cast<std::int64_t>(r.delta_support.size()));
  throw InternalError("unknown filter field " + f);
}

struct Token {
  enum Kind { Word, Quoted, Op, And } kind;
  std::string text;
};

std::vector<Token> lex_filter(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto special = [](char c) { return c == '=' || c == '!' || c == '<' || c == '>' || c == '&' || c == '"'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::string t;
      for (++i; i < s.size() && s[i] != '"'; ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        t += s[i];
      }
      if (i >= s.size()) throw ParseError("unterminated string in filter");
      ++i;
      out.push_back({Token::Quoted, t});
    } else if (s.compare(i, 2, "&&") == 0) {
      out.push_back({Token::And, "&&"});
      i += 2;
    } else if (s.compare(i, 2, "==") == 0 || s.compare(i, 2, "!=") == 0 || s.compare(i, 2, "<=") == 0 ||
               s.compare(i, 2, ">=") == 0) {
      out.push_back({Token::Op, s.substr(i, 2)});
      i += 2;
    } else if (c == '<' || c == '>') {
      out.push_back({Token::Op, std::string(1, c)});
      ++i;
    } else if (special(c)) {
      throw ParseError(std::string("unexpected '") + c + "' in filter at offset " + std::to_string(i));
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && !special(s[j])) ++j;
      out.push_back({Token::Word, s.substr(i, j - i)});
      i = j;
    }
  }
  return out;
}

bool parse_int(const std::string& w, std::int64_t& v) {
  if (w.empty()) return false;
  std::size_t pos = 0;
  try {
    v = std::stoll(w, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == w.size();
}

}  // namespace

RecordFilter::RecordFilter(const std::string& expr) {
  const auto toks = lex_filter(expr);
  std::size_t i = 0;
  auto operand = [&]() {
    if (i >= toks.size()) throw ParseError("filter ends where an operand was expected");
    const Token& t = toks[i++];
    Operand o;
    if (t.kind == Token::Quoted) {
      o.text = t.text;
    } else if (t.kind == Token::Word) {
      if (filter_fields().count(t.text)) {
        o.is_field = true;
        o.field = t.text;
      } else {
        o.text = t.text;
        o.is_int = parse_int(t.text, o.num);
      }
    } else {
      throw ParseError("expected a field or value, got '" + t.text + "'");
    }
    return o;
  };
  auto type_of = [](const Operand& o) {
    if (o.is_field) return filter_fields().at(o.field);
    return o.is_int ? FieldType::Int : FieldType::Text;
  };
  if (toks.empty()) throw ParseError("empty filter");
  for (;;) {
    Comparison c;
    c.lhs = operand();
    if (i >= toks.size() || toks[i].kind != Token::Op) throw ParseError("expected a comparison operator");
    c.op = toks[i++].text;
    c.rhs = operand();
    if (!c.lhs.is_field && !c.rhs.is_field)
      throw ParseError("comparison '" + c.lhs.text + " " + c.op + " " + c.rhs.text + "' names no field");
    // A literal against a text field is compared as text; an int field needs
    // an int on the other side.
    const FieldType lt = type_of(c.lhs), rt = type_of(c.rhs);
    if (lt != rt) {
      const Operand& lit = c.lhs.is_field ? c.rhs : c.lhs;
      const FieldType ft = c.lhs.is_field ? lt : rt;
      if (lit.is_field || ft == FieldType::Int)
        throw ParseError("type mismatch in comparison with operator " + c.op);
    }
    terms_.push_back(std::move(c));
    if (i == toks.size()) break;
    if (toks[i].kind != Token::And) throw ParseError("expected '&&' before '" + toks[i].text + "'");
    ++i;
  }
}

bool RecordFilter::operator()(const CensusRecord& r) const {
  for (const auto& c : terms_) {
    auto eval = [&](const Operand& o, bool as_text) {
      if (o.is_field) return field_value(r, o.field);
      if (o.is_int && !as_text) return Value{true, o.num, {}};
      return Value{false, 0, o.text};
    };
    const bool text = (c.lhs.is_field && filter_fields().at(c.lhs.field) == FieldType::Text) ||
                      (c.rhs.is_field && filter_fields().at(c.rhs.field) == FieldType::Text);
    const Value a = eval(c.lhs, text), b = eval(c.rhs, text);
    int cmp;
    if (text)
      cmp = a.text.compare(b.text);
    else
      cmp = (a.num > b.num) - (a.num < b.num);
    bool ok;
    if (c.op == "==") ok = cmp == 0;
    else if (c.op == "!=") ok = cmp != 0;
    else if (c.op == "<") ok = cmp < 0;
    else if (c.op == "<=") ok = cmp <= 0;
    else if (c.op == ">") ok = cmp > 0;
    else ok = cmp >= 0;
    if (!ok) return false;
  }
  return true;
}

std::vector<CensusRecord> census_query(const std::string& store_path, const std::string& filter_expr) {
  const RecordFilter f(filter_expr);
  std::vector<CensusRecord> out;
  for (auto& r : read_store(store_path))
    if (f(r)) out.push_back(std::move(r));
  return out;
}

}  // namespace khdetect
