#include <bit>
#include <numeric>

#include "graded_complex.hpp"
#include "khdetect/errors.hpp"

namespace khdetect::detail {

namespace {

struct State {
  std::vector<int> circle_of;  // by edge label - 1
  std::vector<int> rep;        // one edge label per circle
  int circles = 0;
  int marked = 0;
  std::vector<long> index;     // labelling mask -> index in its (h,q) block, -1 if not a generator
};

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Smoothing convention: the 0-smoothing joins slots (0,1) and (2,3), the
// 1-smoothing joins (0,3) and (1,2). Labelling bit 1 means the circle carries
// x, bit 0 means 1; the marked circle is always 1.
State smooth(const PlanarDiagram& d, unsigned long s) {
  const int m = d.edge_count();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto join = [&](int x, int y) { parent[find_root(parent, x - 1)] = find_root(parent, y - 1); };
  for (std::size_t i = 0; i < d.crossing_count(); ++i) {
    const auto& e = d.crossings()[i].e;
    if ((s >> i) & 1) {
      join(e[0], e[3]);
      join(e[1], e[2]);
    } else {
      join(e[0], e[1]);
      join(e[2], e[3]);
    }
  }
  State st;
  st.circle_of.assign(m, -1);
  std::vector<int> id_of_root(m, -1);
  for (int l = 0; l < m; ++l) {
    const int r = find_root(parent, l);
    if (id_of_root[r] < 0) {
      id_of_root[r] = st.circles++;
      st.rep.push_back(l + 1);
    }
    st.circle_of[l] = id_of_root[r];
  }
  st.marked = st.circle_of[d.basepoint_edge() - 1];
  return st;
}

}  // namespace

GradedComplex naive_cube(const PlanarDiagram& d, ScalarDomain domain) {
  GradedComplex out;
  out.domain = domain;
  const int n = static_cast<int>(d.crossing_count());
  if (n == 0) {
    out.rank[{0, 0}] = 1;
    return out;
  }
  const int np = d.positive_count(), nm = d.negative_count();
  const unsigned long states = 1ul << n;

  std::vector<State> st(states);
  for (unsigned long s = 0; s < states; ++s) {
    st[s] = smooth(d, s);
    const int r = std::popcount(s);
    const int k = st[s].circles;
    st[s].index.assign(1ul << k, -1);
    for (unsigned long lab = 0; lab < (1ul << k); ++lab) {
      if ((lab >> st[s].marked) & 1) continue;
      const int h = r - nm;
      const int q = (k - 2 * std::popcount(lab)) + r + np - 2 * nm - 1;
      st[s].index[lab] = static_cast<long>(out.rank[{h, q}]++);
    }
  }

  std::map<Bigrading, std::vector<std::pair<std::pair<long, long>, int>>> entries;
  for (unsigned long s = 0; s < states; ++s) {
    const State& a = st[s];
    const int h = std::popcount(s) - nm;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) continue;
      const unsigned long t = s | (1ul << i);
      const State& b = st[t];
      const int sign = std::popcount(s & ((1ul << i) - 1)) % 2 ? -1 : 1;
      const auto& e = d.crossings()[i].e;
      const int c1 = a.circle_of[e[0] - 1], c2 = a.circle_of[e[2] - 1];
      const int d1 = b.circle_of[e[0] - 1], d2 = b.circle_of[e[1] - 1];
      std::vector<int> image(a.circles);
      for (int c = 0; c < a.circles; ++c) image[c] = b.circle_of[a.rep[c] - 1];

      for (unsigned long lab = 0; lab < a.index.size(); ++lab) {
        if (a.index[lab] < 0) continue;
        unsigned long rest = 0;
        for (int c = 0; c < a.circles; ++c)
          if (c != c1 && c != c2 && ((lab >> c) & 1)) rest |= 1ul << image[c];
        std::vector<unsigned long> targets;
        if (c1 != c2) {
          const bool x1 = (lab >> c1) & 1, x2 = (lab >> c2) & 1;
          if (x1 && x2) continue;
          targets.push_back(rest | ((x1 || x2) ? 1ul << d1 : 0));
        } else if ((lab >> c1) & 1) {
          targets.push_back(rest | (1ul << d1) | (1ul << d2));
        } else {
          targets.push_back(rest | (1ul << d1));
          targets.push_back(rest | (1ul << d2));
        }
        for (unsigned long tl : targets) {
          if ((tl >> b.marked) & 1) continue;
          const int q = (a.circles - 2 * std::popcount(lab)) + std::popcount(s) + np - 2 * nm - 1;
          entries[{h, q}].push_back({{b.index[tl], a.index[lab]}, sign});
        }
      }
    }
  }

  for (const auto& [hq, rank] : out.rank) {
    const auto [h, q] = hq;
    auto it = out.rank.find({h + 1, q});
    if (it == out.rank.end()) continue;
    ExactMatrix m(it->second, rank, domain);
    for (const auto& [rc, v] : entries[hq]) m.add(rc.first, rc.second, v);
    out.d.emplace(hq, std::move(m));
  }
  for (const auto& [hq, list] : entries)
    if (!list.empty() && !out.d.count(hq)) throw InternalError("naive cube: differential leaves the grading");
  return out;
}

}  // namespace khdetect::detail
