#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "khdetect/khovanov.hpp"

namespace khdetect {

struct CensusRecord {
  std::string name;
  std::string pd;
  std::int64_t dim_q = 0;
  std::int64_t dim_f2 = 0;
  std::int64_t det = 0;
  std::map<int, std::int64_t> delta_support;
  std::string jones;
  std::string alexander;
  std::string verdict;
  std::int64_t compute_time_ms = 0;
  std::string toolkit_version;

  // One JSON object, no newlines.
  std::string to_line() const;
  static CensusRecord from_line(const std::string& line);  // throws ParseError
  bool operator==(const CensusRecord&) const = default;
  // Equal in everything except timing.
  bool same_invariants(const CensusRecord& o) const;
};

std::string toolkit_version();

// Throws InternalError if det > dim_Q or a field is out of range.
void check_record(const CensusRecord& r);

CensusRecord compute_record(const std::string& name, const std::string& pd, const HomologyOptions& opt = {});

struct CsvRow {
  std::string name;
  std::string pd;
  std::string error;  // set for a row that could not be split into name and pd
};

// Header "name,pd"; fields may be double-quoted with "" escapes; CRLF is
// accepted. Commas after the first in an unquoted row belong to the PD code.
// Throws ParseError on a bad header or an unterminated quote.
std::vector<CsvRow> read_csv(std::istream& in);

struct CensusSummary {
  std::size_t rows = 0;
  std::size_t written = 0;
  std::map<std::string, std::size_t> per_verdict;
  std::vector<std::pair<std::string, std::string>> skipped;  // name, reason
};

// Records come back in row order whatever the parallelism. Rows that fail
// are reported in skipped rather than thrown.
CensusSummary census_compute(const std::vector<CsvRow>& rows, unsigned parallelism, const HomologyOptions& opt,
                             std::vector<CensusRecord>& out);

// Reads input_csv and appends one line per record to output_path.
CensusSummary census_run(const std::string& input_csv, const std::string& output_path, unsigned parallelism,
                         const HomologyOptions& opt = {});

// Filters: comparisons (== != < <= > >=) between fields and literals joined
// by &&. Fields are the record's own plus delta_min, delta_max and
// delta_count. Literals are integers, bare words or "quoted strings".
class RecordFilter {
 public:
  explicit RecordFilter(const std::string& expr);  // throws ParseError
  bool operator()(const CensusRecord& r) const;

 private:
  struct Operand {
    bool is_field = false;
    std::string field;
    bool is_int = false;
    std::int64_t num = 0;
    std::string text;
  };
  struct Comparison {
    Operand lhs, rhs;
    std::string op;
  };
  std::vector<Comparison> terms_;
};

std::vector<CensusRecord> read_store(const std::string& store_path);  // missing file = empty store
std::vector<CensusRecord> census_query(const std::string& store_path, const std::string& filter_expr);

}  // namespace khdetect
