#include <cstdlib>
#include <vector>

#include "khdetect/diagram.hpp"
#include "khdetect/errors.hpp"

namespace khdetect {

namespace {

enum Corner { kNE = 0, kNW = 1, kSW = 2, kSE = 3 };

// Slot (counterclockwise, under-strand 0-2) occupied by each corner.
int slot_of(Corner corner, bool nw_se_over) {
  static constexpr int over_nw_se[4] = {2, 3, 0, 1};  // under SW-NE: SW=0 SE=1 NE=2 NW=3
  static constexpr int over_sw_ne[4] = {3, 0, 1, 2};  // under NW-SE: NW=0 SW=1 SE=2 NE=3
  return nw_se_over ? over_nw_se[corner] : over_sw_ne[corner];
}

enum Port { kTL = 0, kTR = 1, kBL = 2, kBR = 3 };

}  // namespace

PlanarDiagram pretzel_diagram(int p, int q, int r) {
  const int params[3] = {p, q, r};
  if (std::abs(p) + std::abs(q) + std::abs(r) < 1)
    throw ValidationError("pretzel parameters must not all be zero");
  if (std::abs(p) + std::abs(q) + std::abs(r) > 200)
    throw ResourceError("pretzel diagram too large");

  DiagramBuilder b;
  struct Column {
    std::vector<int> xs;
    bool over = true;
  };
  Column cols[3];
  for (int j = 0; j < 3; ++j) {
    cols[j].over = params[j] > 0;
    for (int i = 0; i < std::abs(params[j]); ++i) cols[j].xs.push_back(b.add_crossing());
    for (std::size_t i = 0; i + 1 < cols[j].xs.size(); ++i) {
      b.connect(cols[j].xs[i], slot_of(kSW, cols[j].over), cols[j].xs[i + 1], slot_of(kNW, cols[j].over));
      b.connect(cols[j].xs[i], slot_of(kSE, cols[j].over), cols[j].xs[i + 1], slot_of(kNE, cols[j].over));
    }
  }

  // ports are numbered 4*column + Port
  int ext[12];
  auto join = [&](int a, int c) {
    ext[a] = c;
    ext[c] = a;
  };
  for (int j = 0; j < 2; ++j) {
    join(4 * j + kTR, 4 * (j + 1) + kTL);
    join(4 * j + kBR, 4 * (j + 1) + kBL);
  }
  join(kTL, 4 * 2 + kTR);
  join(kBL, 4 * 2 + kBR);

  auto empty = [&](int port) { return cols[port / 4].xs.empty(); };
  auto through_wire = [](int port) {
    static constexpr int across[4] = {kBL, kBR, kTL, kTR};
    return (port / 4) * 4 + across[port % 4];
  };
  auto slot = [&](int port, int& c, int& s) {
    const Column& col = cols[port / 4];
    switch (port % 4) {
      case kTL: c = col.xs.front(); s = slot_of(kNW, col.over); break;
      case kTR: c = col.xs.front(); s = slot_of(kNE, col.over); break;
      case kBL: c = col.xs.back(); s = slot_of(kSW, col.over); break;
      default: c = col.xs.back(); s = slot_of(kSE, col.over); break;
    }
  };

  bool used[12] = {};
  for (int port = 0; port < 12; ++port) {
    if (empty(port) || used[port]) continue;
    int other = ext[port];
    used[port] = true;
    while (empty(other)) {
      used[other] = true;
      const int w = through_wire(other);
      used[w] = true;
      other = ext[w];
    }
    used[other] = true;
    int c1, s1, c2, s2;
    slot(port, c1, s1);
    slot(other, c2, s2);
    b.connect(c1, s1, c2, s2);
  }
  for (int port = 0; port < 12; ++port)
    if (!used[port]) throw LinkError("pretzel parameters give a link (closed unknotted component)");

  return b.build();
}

}  // namespace khdetect
