#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "khdetect/census.hpp"

namespace khtest {

using khdetect::Crossing;

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Crossings with arbitrary labels plus the labels in traversal order;
// finish() renumbers them 1..2n along the knot.
struct Draft {
  std::vector<std::array<int, 4>> x;
  std::vector<int> order;
  int fresh;

  explicit Draft(const PlanarDiagram& d) {
    for (const auto& c : d.crossings()) x.push_back(c.e);
    order.resize(d.edge_count());
    std::iota(order.begin(), order.end(), 1);
    fresh = d.edge_count() + 1;
  }
  void replace_in_order(int label, const std::vector<int>& pieces) {
    auto it = std::find(order.begin(), order.end(), label);
    it = order.erase(it);
    order.insert(it, pieces.begin(), pieces.end());
  }
  PlanarDiagram finish() const {
    std::map<int, int> to;
    for (std::size_t i = 0; i < order.size(); ++i) to[order[i]] = static_cast<int>(i) + 1;
    std::vector<Crossing> out;
    for (const auto& c : x) out.push_back({{to.at(c[0]), to.at(c[1]), to.at(c[2]), to.at(c[3])}});
    return PlanarDiagram::from_crossings(out);
  }
};

int next_label(int e, int m) { return e % m + 1; }

}  // namespace

LaurentPoly kauffman_jones(const PlanarDiagram& d) {
  const int n = static_cast<int>(d.crossing_count());
  const int m = d.edge_count();
  if (n == 0) return LaurentPoly::constant(1);
  if (n > 20) throw std::invalid_argument("state sum too large");
  // Loop value -A^2 - A^-2, as a polynomial in A.
  const LaurentPoly loop{{2, -1}, {-2, -1}};
  LaurentPoly bracket;
  for (unsigned long s = 0; s < (1ul << n); ++s) {
    Dsu u(m + 1);
    int a_count = 0;
    for (int i = 0; i < n; ++i) {
      const auto& e = d.crossings()[i].e;
      if (s >> i & 1) {
        u.unite(e[0], e[3]);
        u.unite(e[1], e[2]);
      } else {
        ++a_count;
        u.unite(e[0], e[1]);
        u.unite(e[2], e[3]);
      }
    }
    int loops = 0;
    for (int l = 1; l <= m; ++l) loops += u.find(l) == l;
    LaurentPoly term = LaurentPoly::monomial(1, a_count - (n - a_count));
    for (int k = 1; k < loops; ++k) term = term * loop;
    bracket += term;
  }
  // (-A^3)^{-w} <D>, then t = A^{-4}.
  const int w = d.writhe();
  LaurentPoly norm = bracket.shifted(-3 * w);
  if (w % 2) norm = norm.negated();
  LaurentPoly v;
  for (const auto& [e, c] : norm.terms()) {
    if (e % 4) throw std::logic_error("bracket exponent not divisible by 4");
    v.add_term(-e / 4, c);
  }
  return v;
}

PlanarDiagram add_kink(const PlanarDiagram& d, int edge, int kind) {
  const int m = d.edge_count();
  Draft g(d);
  if (m == 0) {
    // A kink on the crossingless circle.
    std::vector<Crossing> k;
    const std::array<std::array<int, 4>, 4> forms = {{{1, 2, 2, 1}, {1, 1, 2, 2}, {2, 2, 1, 1}, {2, 1, 1, 2}}};
    k.push_back({forms[kind]});
    return PlanarDiagram::from_crossings(k);
  }
  if (m < 4) throw std::invalid_argument("kink insertion needs at least two crossings");
  // Edge `edge` becomes in -> loop -> out; the old incoming end keeps `out`.
  const int in = edge, loop = g.fresh, out = g.fresh + 1;
  for (auto& c : g.x)
    for (int s = 0; s < 4; ++s)
      if (c[s] == edge && c[(s + 2) % 4] == next_label(edge, m)) c[s] = out;
  std::array<int, 4> k;
  switch (kind) {
    case 0: k = {in, out, loop, loop}; break;   // under first, positive
    case 1: k = {in, loop, loop, out}; break;   // under first, negative
    case 2: k = {loop, loop, out, in}; break;   // over first
    default: k = {loop, in, out, loop}; break;  // over first
  }
  g.x.push_back(k);
  g.replace_in_order(edge, {in, loop, out});
  return g.finish();
}

PlanarDiagram add_r2(const PlanarDiagram& d, std::size_t c, int slot, bool pushed_strand_over) {
  const int m = d.edge_count();
  if (m < 4) throw std::invalid_argument("R2 insertion needs at least two crossings");
  Draft g(d);
  const int s = slot, t = (slot + 1) % 4;
  const int e = g.x[c][s], f = g.x[c][t];
  if (e == f) throw std::invalid_argument("edges coincide");
  // Outgoing from crossing c, or incoming?
  const bool e_out = g.x[c][(s + 2) % 4] != next_label(e, m);
  const bool f_out = g.x[c][(t + 2) % 4] != next_label(f, m);
  const int en = g.fresh, em = g.fresh + 1, ef = g.fresh + 2;
  const int fn = g.fresh + 3, fm = g.fresh + 4, ff = g.fresh + 5;
  // The far ends of e and f now carry ef and ff.
  for (std::size_t i = 0; i < g.x.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      if (i == c && (k == s || k == t)) continue;
      if (g.x[i][k] == e) g.x[i][k] = ef;
      else if (g.x[i][k] == f) g.x[i][k] = ff;
    }
  g.x[c][s] = en;
  g.x[c][t] = fn;
  // Around the first new crossing counterclockwise: en, fm, em, fn; around
  // the second: ef, ff, em, fm. Start each at the incoming under-strand.
  std::array<int, 4> c1{en, fm, em, fn}, c2{ef, ff, em, fm};
  auto rotate_to = [](std::array<int, 4> a, int start) {
    return std::array<int, 4>{a[start], a[(start + 1) % 4], a[(start + 2) % 4], a[(start + 3) % 4]};
  };
  if (pushed_strand_over) {
    // f is under.
    c1 = rotate_to(c1, f_out ? 3 : 1);
    c2 = rotate_to(c2, f_out ? 3 : 1);
  } else {
    c1 = rotate_to(c1, e_out ? 0 : 2);
    c2 = rotate_to(c2, e_out ? 2 : 0);
  }
  g.x.push_back(c1);
  g.x.push_back(c2);
  g.replace_in_order(e, e_out ? std::vector<int>{en, em, ef} : std::vector<int>{ef, em, en});
  g.replace_in_order(f, f_out ? std::vector<int>{fn, fm, ff} : std::vector<int>{ff, fm, fn});
  return g.finish();
}

PlanarDiagram relabel(const PlanarDiagram& d, int k) {
  const int m = d.edge_count();
  if (m == 0) return d;
  std::vector<Crossing> out;
  for (auto it = d.crossings().rbegin(); it != d.crossings().rend(); ++it) {
    Crossing c;
    for (int s = 0; s < 4; ++s) c.e[s] = ((it->e[s] - 1 + k) % m + m) % m + 1;
    out.push_back(c);
  }
  return PlanarDiagram::from_crossings(out);
}

std::vector<NamedKnot> corpus(int max_crossings) {
  std::ifstream in(std::string(KHDETECT_DATA_DIR) + "/knots.csv");
  if (!in) throw std::runtime_error("cannot open bundled knot table");
  std::vector<NamedKnot> out;
  for (const auto& row : khdetect::read_csv(in)) {
    auto d = khdetect::parse_pd(row.pd);
    if (static_cast<int>(d.crossing_count()) <= max_crossings) out.push_back({row.name, std::move(d)});
  }
  return out;
}

const NamedKnot& corpus_knot(const std::string& name) {
  static const std::vector<NamedKnot> all = corpus();
  for (const auto& k : all)
    if (k.name == name) return k;
  throw std::invalid_argument("no knot " + name + " in the table");
}

PlanarDiagram torus_knot(int p, int q) {
  // Braid strands run upward. Corners of each crossing: SE=0, NE=1, NW=2,
  // SW=3; the SW-NE strand is over, which makes every crossing positive.
  khdetect::DiagramBuilder b;
  std::vector<std::pair<int, int>> top(p, {-1, -1}), bottom(p, {-1, -1});
  auto attach = [&](int pos, int c, int slot) {
    if (top[pos].first < 0)
      bottom[pos] = {c, slot};
    else
      b.connect(top[pos].first, top[pos].second, c, slot);
  };
  for (int r = 0; r < q; ++r)
    for (int i = 0; i + 1 < p; ++i) {
      const int c = b.add_crossing();
      attach(i, c, 3);
      attach(i + 1, c, 0);
      top[i] = {c, 2};
      top[i + 1] = {c, 1};
    }
  for (int i = 0; i < p; ++i) b.connect(top[i].first, top[i].second, bottom[i].first, bottom[i].second);
  return b.build();
}

}  // namespace khtest
