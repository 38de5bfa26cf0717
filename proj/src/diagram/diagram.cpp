#include "khdetect/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "khdetect/errors.hpp"

namespace khdetect {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Faces of the ribbon graph given by the counterclockwise slot order. Walking
// along an edge into slot s' and leaving through slot s'+3 keeps the face on
// the left, so the orbits of that map are the faces.
std::size_t count_faces(const std::vector<Crossing>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::array<int, 2>> where(2 * n + 1, {-1, -1});
  for (std::size_t c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      auto& w = where[xs[c].e[s]];
      (w[0] < 0 ? w[0] : w[1]) = static_cast<int>(4 * c + s);
    }
  auto partner = [&](int h) {
    const auto& w = where[xs[h / 4].e[h % 4]];
    return w[0] == h ? w[1] : w[0];
  };
  std::vector<char> seen(4 * n, 0);
  std::size_t faces = 0;
  for (std::size_t start = 0; start < 4 * n; ++start) {
    if (seen[start]) continue;
    ++faces;
    int h = static_cast<int>(start);
    while (!seen[h]) {
      seen[h] = 1;
      const int p = partner(h);
      h = (p / 4) * 4 + (p % 4 + 3) % 4;
    }
  }
  return faces;
}

}  // namespace

PlanarDiagram PlanarDiagram::from_crossings(std::vector<Crossing> crossings, int basepoint_edge) {
  PlanarDiagram d;
  const int n = static_cast<int>(crossings.size());
  const int m = 2 * n;
  if (n == 0) {
    if (basepoint_edge != 1) throw ValidationError("basepoint edge must be 1 for the empty diagram");
    return d;
  }

  std::vector<int> count(m + 1, 0);
  for (const auto& x : crossings)
    for (int l : x.e) {
      if (l < 1 || l > m)
        throw ValidationError("edge label " + std::to_string(l) + " outside 1.." + std::to_string(m));
      ++count[l];
    }
  for (int l = 1; l <= m; ++l)
    if (count[l] != 2)
      throw ValidationError("edge label " + std::to_string(l) + " appears " +
                            std::to_string(count[l]) + " times, expected 2");

  // strands pass straight through: a-c and b-d lie on the same component
  std::vector<int> parent(m + 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& x : crossings) {
    parent[find_root(parent, x.e[0])] = find_root(parent, x.e[2]);
    parent[find_root(parent, x.e[1])] = find_root(parent, x.e[3]);
  }
  int components = 0;
  for (int l = 1; l <= m; ++l)
    if (find_root(parent, l) == l) ++components;
  if (components != 1)
    throw LinkError("diagram has " + std::to_string(components) + " components; only knots are supported");

  if (count_faces(crossings) != static_cast<std::size_t>(n + 2))
    throw ValidationError("PD code is not planar");

  auto next = [m](int l) { return l % m + 1; };
  d.signs_.reserve(n);
  for (const auto& x : crossings) {
    const auto [a, b, c, dd] = x.e;
    if (c != next(a))
      throw ValidationError("under-strand " + std::to_string(a) + " -> " + std::to_string(c) +
                            " is not consecutive in the edge numbering");
    const bool fwd = b == next(dd);  // over-strand d -> b
    const bool bwd = dd == next(b);  // over-strand b -> d
    if (!fwd && !bwd)
      throw ValidationError("over-strand labels " + std::to_string(b) + "," + std::to_string(dd) +
                            " are not consecutive");
    int s = fwd ? 1 : -1;
    // only with two edges can both directions look consecutive; then the
    // incoming over label must differ from the incoming under label
    if (fwd && bwd) s = dd != a ? 1 : -1;
    d.signs_.push_back(s);
  }

  if (basepoint_edge < 1 || basepoint_edge > m)
    throw ValidationError("basepoint edge " + std::to_string(basepoint_edge) + " outside 1.." +
                          std::to_string(m));
  d.crossings_ = std::move(crossings);
  d.basepoint_ = basepoint_edge;
  return d;
}

int PlanarDiagram::writhe() const { return std::accumulate(signs_.begin(), signs_.end(), 0); }

int PlanarDiagram::positive_count() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), 1));
}

int PlanarDiagram::negative_count() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1));
}

PlanarDiagram PlanarDiagram::with_basepoint(int edge) const {
  if (crossings_.empty() && edge == 1) return *this;
  return from_crossings(crossings_, edge);
}

namespace {

class PdLexer {
 public:
  explicit PdLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ == s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }
  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty() || tok == "-" || tok == "+") fail("expected integer");
    if (tok.size() > 9) fail("integer '" + tok + "' too large");
    return std::stoi(tok);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<Crossing> parse_functional(std::string_view text) {
  PdLexer lx(text);
  std::vector<Crossing> xs;
  lx.expect_word("PD");
  lx.expect('[');
  if (!lx.accept(']')) {
    do {
      lx.expect('X');
      lx.expect('[');
      Crossing c;
      for (int k = 0; k < 4; ++k) {
        if (k) lx.expect(',');
        c.e[k] = lx.integer();
      }
      lx.expect(']');
      xs.push_back(c);
    } while (lx.accept(','));
    lx.expect(']');
  }
  if (!lx.at_end()) lx.fail("trailing characters");
  return xs;
}

std::vector<Crossing> parse_structured(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed structured PD: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("structured PD must be a list of 4-element integer arrays");
  std::vector<Crossing> xs;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 4)
      throw ParseError("structured PD must be a list of 4-element integer arrays");
    Crossing c;
    for (int k = 0; k < 4; ++k) {
      if (!row[k].is_number_integer()) throw ParseError("non-integer edge label in structured PD");
      c.e[k] = row[k].get<int>();
    }
    xs.push_back(c);
  }
  return xs;
}

}  // namespace

PlanarDiagram parse_pd(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) throw ParseError("empty PD text");
  auto xs = text[i] == '[' ? parse_structured(text) : parse_functional(text);
  return PlanarDiagram::from_crossings(std::move(xs));
}

std::string to_pd_string(const PlanarDiagram& d) {
  std::ostringstream os;
  os << "PD[";
  bool first = true;
  for (const auto& x : d.crossings()) {
    if (!first) os << ',';
    first = false;
    os << "X[" << x.e[0] << ',' << x.e[1] << ',' << x.e[2] << ',' << x.e[3] << ']';
  }
  os << ']';
  return os.str();
}

std::string to_pd_json(const PlanarDiagram& d) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : d.crossings()) j.push_back(x.e);
  return j.dump();
}

PlanarDiagram mirror(const PlanarDiagram& d) {
  std::vector<Crossing> out;
  out.reserve(d.crossing_count());
  for (std::size_t i = 0; i < d.crossing_count(); ++i) {
    const auto [a, b, c, e] = d.crossings()[i].e;
    // the old over-strand becomes the under-strand; start at its incoming end
    out.push_back(d.sign(i) > 0 ? Crossing{{e, a, b, c}} : Crossing{{b, c, e, a}});
  }
  return PlanarDiagram::from_crossings(std::move(out), d.basepoint_edge());
}

int DiagramBuilder::add_crossing() {
  link_.push_back({-1, -1, -1, -1});
  return static_cast<int>(link_.size()) - 1;
}

void DiagramBuilder::connect(int c1, int s1, int c2, int s2) {
  if (link_.at(c1)[s1] >= 0 || link_.at(c2)[s2] >= 0)
    throw ValidationError("diagram builder: slot connected twice");
  link_[c1][s1] = 4 * c2 + s2;
  link_[c2][s2] = 4 * c1 + s1;
}

PlanarDiagram DiagramBuilder::build() const {
  const int n = static_cast<int>(link_.size());
  if (n == 0) return PlanarDiagram();
  for (const auto& l : link_)
    for (int p : l)
      if (p < 0) throw ValidationError("diagram builder: open slot");

  std::vector<int> label(4 * n, 0);
  std::vector<char> incoming(4 * n, 0);
  const int start = 2;  // crossing 0, slot 2, leaving along the under-strand
  int out = start;
  int next_label = 1;
  do {
    const int in = link_[out / 4][out % 4];
    label[out] = label[in] = next_label++;
    incoming[in] = 1;
    out = (in / 4) * 4 + (in % 4 + 2) % 4;
  } while (out != start);
  if (next_label - 1 != 2 * n)
    throw LinkError("diagram has more than one component");

  std::vector<Crossing> xs(n);
  for (int c = 0; c < n; ++c) {
    const int u = incoming[4 * c] ? 0 : 2;
    for (int k = 0; k < 4; ++k) xs[c].e[k] = label[4 * c + (u + k) % 4];
  }
  return PlanarDiagram::from_crossings(std::move(xs));
}

}  // namespace khdetect
