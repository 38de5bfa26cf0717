// Reduced Khovanov complex by scanning crossings one at a time.
//
// Objects are crossingless tangles with a q-shift, living in Bar-Natan's
// dotted cobordism category with h = t = 0. A morphism between two tangles on
// the same boundary is kept in normal form: a linear combination of dot
// patterns on the disks bounded by the cycles of (source u target), with at
// most one dot per disk. The boundary point at the cut end of the basepoint
// edge is marked, and any cobordism carrying a dot on the component through
// the marked point is zero; this realises the reduced theory.
//
// Adding a crossing tensors with its two-term complex, deloops every closed
// circle (O ~ O{+1} + O{-1}) and then cancels every isomorphism entry by
// Gaussian elimination. After the last crossing only the marked arc remains
// and the morphisms are scalars.

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "graded_complex.hpp"
#include "khdetect/errors.hpp"

namespace khdetect::detail {

namespace {

using Mask = std::uint64_t;
using Matching = std::vector<std::uint8_t>;

constexpr int kCutLabel = -1;  // label of the cut end of the basepoint edge

struct ArithmeticOverflow {};

struct CheckedIntRing {
  using S = std::int64_t;
  static constexpr bool is_field = false;
  S one() const { return 1; }
  S add(S a, S b) const {
    S r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
  }
  S mul(S a, S b) const {
    S r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow{};
    return r;
  }
  S neg(S a) const {
    if (a == INT64_MIN) throw ArithmeticOverflow{};
    return -a;
  }
  S from_int(int v) const { return v; }
  bool is_zero(S a) const { return a == 0; }
  bool is_unit(S a) const { return a == 1 || a == -1; }
  S unit_inverse(S a) const { return a; }
  mpq_class to_mpq(S a) const { return mpq_class(mpz_class(static_cast<long>(a))); }
};

struct BigIntRing {
  using S = mpz_class;
  static constexpr bool is_field = false;
  S one() const { return 1; }
  S add(const S& a, const S& b) const { return a + b; }
  S mul(const S& a, const S& b) const { return a * b; }
  S neg(const S& a) const { return -a; }
  S from_int(int v) const { return v; }
  bool is_zero(const S& a) const { return a == 0; }
  bool is_unit(const S& a) const { return a == 1 || a == -1; }
  S unit_inverse(const S& a) const { return a; }
  mpq_class to_mpq(const S& a) const { return mpq_class(a); }
};

struct PrimeFieldRing {
  using S = std::uint32_t;
  static constexpr bool is_field = true;
  std::uint32_t p;
  S one() const { return 1 % p; }
  S add(S a, S b) const { return (a + b) % p; }
  S mul(S a, S b) const { return static_cast<S>(static_cast<std::uint64_t>(a) * b % p); }
  S neg(S a) const { return a ? p - a : 0; }
  S from_int(int v) const { return static_cast<S>(((v % static_cast<int>(p)) + static_cast<int>(p)) % static_cast<int>(p)); }
  bool is_zero(S a) const { return a == 0; }
  bool is_unit(S a) const { return a != 0; }
  S unit_inverse(S a) const {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<S>(r);
  }
  mpq_class to_mpq(S a) const { return mpq_class(static_cast<unsigned long>(a)); }
};

template <class S>
struct Term {
  Mask dots;
  S coeff;
};

template <class S>
using Morphism = std::vector<Term<S>>;  // sorted by dots, no zero coefficients

// Cycles of the union of two matchings on the same points, numbered in order
// of their smallest point.
int cycles_of(const Matching& a, const Matching& b, std::vector<int>& cyc) {
  const std::size_t m = a.size();
  cyc.assign(m, -1);
  int count = 0;
  for (std::size_t x = 0; x < m; ++x) {
    if (cyc[x] >= 0) continue;
    std::size_t y = x;
    do {
      cyc[y] = count;
      const std::size_t z = a[y];
      cyc[z] = count;
      y = b[z];
    } while (y != x);
    ++count;
  }
  return count;
}

class TangleTable {
 public:
  std::uint32_t intern(const Matching& m) {
    auto [it, inserted] = index_.try_emplace(key(m), static_cast<std::uint32_t>(items_.size()));
    if (inserted) items_.push_back(m);
    return it->second;
  }
  const Matching& operator[](std::uint32_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }

 private:
  static std::string key(const Matching& m) { return std::string(m.begin(), m.end()); }
  std::vector<Matching> items_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// A connected component of a cobordism built by gluing normal-form pieces.
// in_a / in_b are the dot-carrying disks it contains from the two inputs,
// boundary the result cycles it bounds.
struct SurfaceComponent {
  Mask in_a = 0;
  Mask in_b = 0;
  Mask boundary = 0;
  int genus = 0;
  bool marked = false;
  Mask marked_bit = 0;
};

struct SurfaceShape {
  std::vector<SurfaceComponent> comps;
};

// Connected surfaces are evaluated in the Frobenius algebra Z[x]/(x^2): with
// d dots and genus g, d + g >= 2 gives zero, d + g = 1 dots every boundary
// cycle (times 2^g), and d + g = 0 sums over the choice of one undotted
// boundary cycle. On the marked component only the term leaving the marked
// cycle undotted survives.
template <class Ring, class Out>
void evaluate(const SurfaceShape& shape, Mask dots_a, Mask dots_b, typename Ring::S coeff, const Ring& R,
              Out&& out) {
  Mask fixed = 0;
  Mask choices[64];
  int nchoice = 0;
  for (const auto& c : shape.comps) {
    const int dg = std::popcount(dots_a & c.in_a) + std::popcount(dots_b & c.in_b) + c.genus;
    if (c.marked) {
      if (dg > 0) return;
      fixed |= c.boundary & ~c.marked_bit;
    } else if (dg >= 2) {
      return;
    } else if (dg == 1) {
      fixed |= c.boundary;
      if (c.genus == 1) {
        coeff = R.add(coeff, coeff);
        if (R.is_zero(coeff)) return;
      }
    } else if (std::popcount(c.boundary) > 1) {
      choices[nchoice++] = c.boundary;
    }
  }
  if (nchoice == 0) {
    out(fixed, coeff);
    return;
  }
  // enumerate one undotted cycle per choice component
  Mask picks[64];
  for (int i = 0; i < nchoice; ++i) picks[i] = choices[i] & (~choices[i] + 1);
  for (;;) {
    Mask m = fixed;
    for (int i = 0; i < nchoice; ++i) m |= choices[i] & ~picks[i];
    out(m, coeff);
    int i = 0;
    for (; i < nchoice; ++i) {
      Mask rest = choices[i] & ~((picks[i] << 1) - 1);
      if (rest) {
        picks[i] = rest & (~rest + 1);
        break;
      }
      picks[i] = choices[i] & (~choices[i] + 1);
    }
    if (i == nchoice) break;
  }
}

template <class S>
struct Row {
  std::unordered_map<std::uint32_t, Morphism<S>> out;  // target index in degree k+1
  std::unordered_set<std::uint32_t> in;                // source index in degree k-1
};

struct Object {
  std::uint32_t tangle;
  int q;
  bool alive = true;
};

template <class S>
struct Complex {
  int h0 = 0;  // homological degree of layer 0
  std::vector<std::vector<Object>> objs;
  std::vector<std::vector<Row<S>>> rows;  // parallel to objs
  std::vector<int> boundary;              // edge label per boundary point
  int marked = -1;                        // boundary index of the cut end, or -1
  TangleTable tangles;
};

struct StepGeometry {
  int m_old = 0;
  std::vector<int> glue;             // combined point -> glued combined point, or -1
  std::vector<int> new_index;        // combined point -> new boundary index, or -1
  std::vector<int> combined_of_new;
  int marked_combined = -1;
};

const Matching kSmoothing[2] = {{1, 0, 3, 2}, {3, 2, 1, 0}};

struct GlueResult {
  std::uint32_t tangle = 0;
  std::vector<int> loops;  // smallest combined point on each closed loop
};

template <class Ring>
class Scanner {
 public:
  using S = typename Ring::S;

  Scanner(const Ring& R, const ScanLimits& lim) : R_(R), lim_(lim) {}

  GradedComplex run(const PlanarDiagram& d, ScalarDomain domain);

 private:
  void add_crossing(const std::array<int, 4>& labels);
  void reduce();
  void cancel(std::size_t k, std::uint32_t b1, std::uint32_t b2, const S& u);
  void compact();

  const GlueResult& glued(std::uint32_t t, int s);
  const SurfaceShape& extend_shape(std::uint32_t t1, std::uint32_t t2, int kind);
  const SurfaceShape& compose_shape(std::uint32_t t1, std::uint32_t t2, std::uint32_t t3);

  Morphism<S> compose(const Morphism<S>& f, std::uint32_t tf_src, std::uint32_t tmid, const Morphism<S>& g,
                      std::uint32_t tg_tgt);

  void add_entry(std::size_t k, std::uint32_t src, std::uint32_t dst, Morphism<S>&& m);
  void add_into(Morphism<S>& acc, const Morphism<S>& m);

  const Ring& R_;
  ScanLimits lim_;
  Complex<S> cx_;

  // per-step state
  const Complex<S>* old_ = nullptr;
  StepGeometry geo_;
  std::vector<GlueResult> glue_cache_[2];
  std::vector<char> glue_done_[2];
  std::unordered_map<std::uint64_t, SurfaceShape> extend_cache_;
  std::unordered_map<std::uint64_t, SurfaceShape> compose_cache_;
};

template <class Ring>
const GlueResult& Scanner<Ring>::glued(std::uint32_t t, int s) {
  if (glue_done_[s][t]) return glue_cache_[s][t];
  const Matching& tm = old_->tangles[t];
  const int mo = geo_.m_old;
  const int total = mo + 4;
  auto arc = [&](int x) { return x < mo ? tm[x] : mo + kSmoothing[s][x - mo]; };
  std::vector<char> seen(total, 0);
  Matching nm(geo_.combined_of_new.size());
  for (std::size_t p = 0; p < geo_.combined_of_new.size(); ++p) {
    int x = geo_.combined_of_new[p];
    if (seen[x]) continue;
    seen[x] = 1;
    for (;;) {
      const int y = arc(x);
      seen[y] = 1;
      if (geo_.glue[y] < 0) {
        nm[p] = static_cast<std::uint8_t>(geo_.new_index[y]);
        nm[geo_.new_index[y]] = static_cast<std::uint8_t>(p);
        break;
      }
      x = geo_.glue[y];
      seen[x] = 1;
    }
  }
  GlueResult g;
  for (int x = 0; x < total; ++x) {
    if (seen[x]) continue;
    g.loops.push_back(x);
    int y = x;
    do {
      seen[y] = 1;
      const int z = arc(y);
      seen[z] = 1;
      y = geo_.glue[z];
    } while (y != x);
  }
  g.tangle = cx_.tangles.intern(nm);
  glue_done_[s][t] = 1;
  return glue_cache_[s][t] = std::move(g);
}

// kind 0/1: identity on the crossing's 0/1-smoothing; kind 2: the saddle 0 -> 1.
// The shape's in_a refers to disks of (t1 u t2); boundary bits index the
// cycles of the new tangles, then the source loops, then the target loops.
template <class Ring>
const SurfaceShape& Scanner<Ring>::extend_shape(std::uint32_t t1, std::uint32_t t2, int kind) {
  const std::uint64_t key = (static_cast<std::uint64_t>(t1) * old_->tangles.size() + t2) * 3 + kind;
  auto it = extend_cache_.find(key);
  if (it != extend_cache_.end()) return it->second;

  const int s1 = kind == 2 ? 0 : kind, s2 = kind == 2 ? 1 : kind;
  const GlueResult g1 = glued(t1, s1);
  const GlueResult g2 = glued(t2, s2);
  const int mo = geo_.m_old;

  std::vector<int> cyc_old, cyc_x, cyc_new;
  const int c_old = cycles_of(old_->tangles[t1], old_->tangles[t2], cyc_old);
  const int c_x = cycles_of(kSmoothing[s1], kSmoothing[s2], cyc_x);
  const int c_new = cycles_of(cx_.tangles[g1.tangle], cx_.tangles[g2.tangle], cyc_new);
  auto disk = [&](int x) { return x < mo ? cyc_old[x] : c_old + cyc_x[x - mo]; };

  const int ndisk = c_old + c_x;
  std::vector<int> parent(ndisk);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> glues_at;  // disk whose component gained a glued interval
  for (int x = 0; x < mo + 4; ++x) {
    const int y = geo_.glue[x];
    if (y < 0 || y < x) continue;
    parent[root(disk(x))] = root(disk(y));
    glues_at.push_back(disk(x));
  }

  std::unordered_map<int, int> comp_of_root;
  SurfaceShape shape;
  std::vector<int> disks_in, glues_in, bdry_in;
  auto comp = [&](int dsk) {
    const int r = root(dsk);
    auto [cit, inserted] = comp_of_root.try_emplace(r, static_cast<int>(shape.comps.size()));
    if (inserted) {
      shape.comps.emplace_back();
      disks_in.push_back(0);
      glues_in.push_back(0);
      bdry_in.push_back(0);
    }
    return cit->second;
  };
  for (int dsk = 0; dsk < ndisk; ++dsk) {
    const int c = comp(dsk);
    ++disks_in[c];
    if (dsk < c_old) shape.comps[c].in_a |= Mask(1) << dsk;
  }
  for (int dsk : glues_at) ++glues_in[comp(dsk)];

  const int L1 = static_cast<int>(g1.loops.size());
  std::vector<char> cycle_done(c_new, 0);
  for (std::size_t p = 0; p < geo_.combined_of_new.size(); ++p) {
    const int k = cyc_new[p];
    if (cycle_done[k]) continue;
    cycle_done[k] = 1;
    const int c = comp(disk(geo_.combined_of_new[p]));
    shape.comps[c].boundary |= Mask(1) << k;
    ++bdry_in[c];
  }
  for (int l = 0; l < L1; ++l) {
    const int c = comp(disk(g1.loops[l]));
    shape.comps[c].boundary |= Mask(1) << (c_new + l);
    ++bdry_in[c];
  }
  for (std::size_t l = 0; l < g2.loops.size(); ++l) {
    const int c = comp(disk(g2.loops[l]));
    shape.comps[c].boundary |= Mask(1) << (c_new + L1 + l);
    ++bdry_in[c];
  }
  if (c_new + L1 + static_cast<int>(g2.loops.size()) > 64 || c_old > 64)
    throw ResourceError("tangle boundary too large for the scan");

  for (std::size_t c = 0; c < shape.comps.size(); ++c) {
    const int twice_g = 2 - (disks_in[c] - glues_in[c]) - bdry_in[c];
    if (twice_g < 0 || twice_g % 2) throw InternalError("scan: inconsistent surface topology");
    shape.comps[c].genus = twice_g / 2;
  }
  if (geo_.marked_combined >= 0) {
    const int c = comp(disk(geo_.marked_combined));
    shape.comps[c].marked = true;
    shape.comps[c].marked_bit = Mask(1) << cyc_new[geo_.new_index[geo_.marked_combined]];
  }
  return extend_cache_.emplace(key, std::move(shape)).first->second;
}

template <class Ring>
const SurfaceShape& Scanner<Ring>::compose_shape(std::uint32_t t1, std::uint32_t t2, std::uint32_t t3) {
  const std::uint64_t T = cx_.tangles.size();
  const std::uint64_t key = (static_cast<std::uint64_t>(t1) * T + t2) * T + t3;
  auto it = compose_cache_.find(key);
  if (it != compose_cache_.end()) return it->second;

  const Matching& m1 = cx_.tangles[t1];
  const Matching& m2 = cx_.tangles[t2];
  const Matching& m3 = cx_.tangles[t3];
  std::vector<int> c12, c23, c13;
  const int n12 = cycles_of(m1, m2, c12);
  const int n23 = cycles_of(m2, m3, c23);
  const int n13 = cycles_of(m1, m3, c13);
  std::vector<int> parent(n12 + n23);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> glue_disk;
  for (std::size_t x = 0; x < m2.size(); ++x) {
    if (m2[x] < x) continue;
    parent[root(c12[x])] = root(n12 + c23[x]);
    glue_disk.push_back(c12[x]);
  }
  SurfaceShape shape;
  std::unordered_map<int, int> comp_of_root;
  std::vector<int> disks_in, glues_in, bdry_in;
  auto comp = [&](int dsk) {
    auto [cit, inserted] = comp_of_root.try_emplace(root(dsk), static_cast<int>(shape.comps.size()));
    if (inserted) {
      shape.comps.emplace_back();
      disks_in.push_back(0);
      glues_in.push_back(0);
      bdry_in.push_back(0);
    }
    return cit->second;
  };
  for (int dsk = 0; dsk < n12 + n23; ++dsk) {
    const int c = comp(dsk);
    ++disks_in[c];
    if (dsk < n12)
      shape.comps[c].in_a |= Mask(1) << dsk;
    else
      shape.comps[c].in_b |= Mask(1) << (dsk - n12);
  }
  for (int dsk : glue_disk) ++glues_in[comp(dsk)];
  std::vector<char> done(n13, 0);
  for (std::size_t x = 0; x < m1.size(); ++x) {
    if (done[c13[x]]) continue;
    done[c13[x]] = 1;
    const int c = comp(c12[x]);
    shape.comps[c].boundary |= Mask(1) << c13[x];
    ++bdry_in[c];
  }
  for (std::size_t c = 0; c < shape.comps.size(); ++c) {
    const int twice_g = 2 - (disks_in[c] - glues_in[c]) - bdry_in[c];
    if (twice_g < 0 || twice_g % 2) throw InternalError("scan: inconsistent surface topology");
    shape.comps[c].genus = twice_g / 2;
  }
  if (cx_.marked >= 0) {
    const int c = comp(c12[cx_.marked]);
    shape.comps[c].marked = true;
    shape.comps[c].marked_bit = Mask(1) << c13[cx_.marked];
  }
  return compose_cache_.emplace(key, std::move(shape)).first->second;
}

template <class Ring>
void Scanner<Ring>::add_into(Morphism<S>& acc, const Morphism<S>& m) {
  Morphism<S> out;
  out.reserve(acc.size() + m.size());
  std::size_t i = 0, j = 0;
  while (i < acc.size() || j < m.size()) {
    if (j == m.size() || (i < acc.size() && acc[i].dots < m[j].dots)) {
      out.push_back(std::move(acc[i++]));
    } else if (i == acc.size() || m[j].dots < acc[i].dots) {
      out.push_back(m[j++]);
    } else {
      S v = R_.add(acc[i].coeff, m[j].coeff);
      if (!R_.is_zero(v)) out.push_back({acc[i].dots, std::move(v)});
      ++i;
      ++j;
    }
  }
  acc = std::move(out);
}

template <class S, class Ring>
Morphism<S> normalise(std::vector<Term<S>>& terms, const Ring& R) {
  std::sort(terms.begin(), terms.end(), [](const Term<S>& a, const Term<S>& b) { return a.dots < b.dots; });
  Morphism<S> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().dots == t.dots) {
      out.back().coeff = R.add(out.back().coeff, t.coeff);
      if (R.is_zero(out.back().coeff)) out.pop_back();
    } else if (!R.is_zero(t.coeff)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// g o f where f: tf_src -> tmid and g: tmid -> tg_tgt.
template <class Ring>
Morphism<typename Ring::S> Scanner<Ring>::compose(const Morphism<S>& f, std::uint32_t tf_src, std::uint32_t tmid,
                                                  const Morphism<S>& g, std::uint32_t tg_tgt) {
  const SurfaceShape& shape = compose_shape(tf_src, tmid, tg_tgt);
  std::vector<Term<S>> terms;
  for (const auto& a : f)
    for (const auto& b : g)
      evaluate(shape, a.dots, b.dots, R_.mul(a.coeff, b.coeff), R_,
               [&](Mask m, const S& c) { terms.push_back({m, c}); });
  return normalise(terms, R_);
}

template <class Ring>
void Scanner<Ring>::add_entry(std::size_t k, std::uint32_t src, std::uint32_t dst, Morphism<S>&& m) {
  if (m.empty()) return;
  auto& out = cx_.rows[k][src].out;
  auto it = out.find(dst);
  if (it == out.end()) {
    out.emplace(dst, std::move(m));
    cx_.rows[k + 1][dst].in.insert(src);
    return;
  }
  add_into(it->second, m);
  if (it->second.empty()) {
    out.erase(it);
    cx_.rows[k + 1][dst].in.erase(src);
  }
}

template <class Ring>
void Scanner<Ring>::add_crossing(const std::array<int, 4>& labels) {
  Complex<S> old = std::move(cx_);
  cx_ = Complex<S>();
  old_ = &old;

  const int mo = static_cast<int>(old.boundary.size());
  geo_ = StepGeometry();
  geo_.m_old = mo;
  geo_.glue.assign(mo + 4, -1);
  for (int s = 0; s < 4; ++s) {
    for (int i = 0; i < mo; ++i)
      if (old.boundary[i] == labels[s]) {
        geo_.glue[i] = mo + s;
        geo_.glue[mo + s] = i;
      }
    for (int s2 = s + 1; s2 < 4; ++s2)
      if (labels[s] == labels[s2]) {
        geo_.glue[mo + s] = mo + s2;
        geo_.glue[mo + s2] = mo + s;
      }
  }
  geo_.new_index.assign(mo + 4, -1);
  for (int x = 0; x < mo + 4; ++x) {
    if (geo_.glue[x] >= 0) continue;
    geo_.new_index[x] = static_cast<int>(geo_.combined_of_new.size());
    geo_.combined_of_new.push_back(x);
    cx_.boundary.push_back(x < mo ? old.boundary[x] : labels[x - mo]);
  }
  if (old.marked >= 0) geo_.marked_combined = old.marked;
  for (int s = 0; s < 4; ++s)
    if (labels[s] == kCutLabel) geo_.marked_combined = mo + s;
  cx_.marked = geo_.marked_combined >= 0 ? geo_.new_index[geo_.marked_combined] : -1;

  for (int s = 0; s < 2; ++s) {
    glue_cache_[s].assign(old.tangles.size(), GlueResult());
    glue_done_[s].assign(old.tangles.size(), 0);
  }
  extend_cache_.clear();
  compose_cache_.clear();

  // new objects: (old object, smoothing, deloop index) in degree k + s
  const std::size_t layers = old.objs.size();
  cx_.h0 = old.h0;
  cx_.objs.assign(layers + 1, {});
  std::vector<std::vector<std::array<std::uint32_t, 2>>> first(layers);
  std::size_t total = 0;
  for (std::size_t k = 0; k < layers; ++k) {
    first[k].resize(old.objs[k].size());
    for (std::size_t i = 0; i < old.objs[k].size(); ++i) {
      const Object& o = old.objs[k][i];
      for (int s = 0; s < 2; ++s) {
        const GlueResult& g = glued(o.tangle, s);
        const int L = static_cast<int>(g.loops.size());
        auto& layer = cx_.objs[k + s];
        first[k][i][s] = static_cast<std::uint32_t>(layer.size());
        for (int idx = 0; idx < (1 << L); ++idx)
          layer.push_back({g.tangle, o.q + s + L - 2 * std::popcount(static_cast<unsigned>(idx)), true});
        total += std::size_t(1) << L;
      }
    }
  }
  if (total > lim_.max_objects) throw ResourceError("scan exceeded the object limit");
  cx_.rows.assign(layers + 1, {});
  for (std::size_t k = 0; k <= layers; ++k) cx_.rows[k].resize(cx_.objs[k].size());

  auto emit_exact = [&](std::size_t k_src, std::uint32_t t_src_new, std::uint32_t base_src, int L1,
                        std::uint32_t t_tgt_new, std::uint32_t base_tgt, int L2, const SurfaceShape& shape,
                        const Morphism<S>& f, const S& scale) {
    std::vector<int> cyc;
    const int core_bits = cycles_of(cx_.tangles[t_src_new], cx_.tangles[t_tgt_new], cyc);
    const Mask core_only = (Mask(1) << core_bits) - 1;
    std::unordered_map<std::uint64_t, std::vector<Term<S>>> parts;
    for (const auto& t : f)
      evaluate(shape, t.dots, 0, R_.mul(t.coeff, scale), R_, [&](Mask m, const S& c) {
        const Mask src_bits = (m >> core_bits) & ((Mask(1) << L1) - 1);
        const Mask tgt_bits = (m >> (core_bits + L1)) & ((Mask(1) << L2) - 1);
        const std::uint64_t src_idx = ~src_bits & ((Mask(1) << L1) - 1);
        parts[(src_idx << 32) | tgt_bits].push_back({m & core_only, c});
      });
    std::vector<std::uint64_t> keys;
    for (const auto& kv : parts) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
      Morphism<S> mor = normalise(parts[key], R_);
      add_entry(k_src, base_src + static_cast<std::uint32_t>(key >> 32),
                base_tgt + static_cast<std::uint32_t>(key & 0xffffffffu), std::move(mor));
    }
  };

  const Morphism<S> identity{{0, R_.one()}};
  for (std::size_t k = 0; k < layers; ++k) {
    const S saddle_sign = (old.h0 + static_cast<int>(k)) % 2 ? R_.neg(R_.one()) : R_.one();
    for (std::size_t i = 0; i < old.objs[k].size(); ++i) {
      const Object& o = old.objs[k][i];
      // differential entries of the old complex, tensored with each smoothing
      if (k + 1 < layers)
        for (const auto& [j, f] : old.rows[k][i].out) {
          const Object& o2 = old.objs[k + 1][j];
          for (int s = 0; s < 2; ++s) {
            const GlueResult& ga = glued(o.tangle, s);
            const GlueResult& gb = glued(o2.tangle, s);
            emit_exact(k + s, ga.tangle, first[k][i][s], static_cast<int>(ga.loops.size()), gb.tangle,
                       first[k + 1][j][s], static_cast<int>(gb.loops.size()), extend_shape(o.tangle, o2.tangle, s),
                       f, R_.one());
          }
        }
      const GlueResult& g0 = glued(o.tangle, 0);
      const GlueResult& g1 = glued(o.tangle, 1);
      emit_exact(k, g0.tangle, first[k][i][0], static_cast<int>(g0.loops.size()), g1.tangle, first[k][i][1],
                 static_cast<int>(g1.loops.size()), extend_shape(o.tangle, o.tangle, 2), identity, saddle_sign);
    }
  }
  old_ = nullptr;
}

template <class Ring>
void Scanner<Ring>::cancel(std::size_t k, std::uint32_t b1, std::uint32_t b2, const S& u) {
  auto& L = cx_.rows;
  const S minus_uinv = R_.neg(R_.unit_inverse(u));
  const std::uint32_t tb = cx_.objs[k][b1].tangle;

  std::vector<std::pair<std::uint32_t, Morphism<S>>> deltas;  // x -> b2
  for (std::uint32_t x : L[k + 1][b2].in)
    if (x != b1) deltas.push_back({x, L[k][x].out.at(b2)});
  std::vector<std::pair<std::uint32_t, Morphism<S>>> gammas;  // b1 -> y
  for (const auto& [y, g] : L[k][b1].out)
    if (y != b2) gammas.push_back({y, g});
  std::sort(deltas.begin(), deltas.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(gammas.begin(), gammas.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [x, delta] : deltas)
    for (const auto& [y, gamma] : gammas) {
      Morphism<S> m = compose(delta, cx_.objs[k][x].tangle, tb, gamma, cx_.objs[k + 1][y].tangle);
      for (auto& t : m) t.coeff = R_.mul(t.coeff, minus_uinv);
      add_entry(k, x, y, std::move(m));
    }

  auto drop = [&](std::size_t layer, std::uint32_t v) {
    if (layer > 0)
      for (std::uint32_t w : L[layer][v].in) L[layer - 1][w].out.erase(v);
    if (layer + 1 < L.size())
      for (const auto& [y, mor] : L[layer][v].out) L[layer + 1][y].in.erase(v);
    L[layer][v].in.clear();
    L[layer][v].out.clear();
    cx_.objs[layer][v].alive = false;
  };
  drop(k, b1);
  drop(k + 1, b2);
}

template <class Ring>
void Scanner<Ring>::reduce() {
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t k = 0; k + 1 < cx_.objs.size(); ++k)
      for (std::uint32_t i = 0; i < cx_.objs[k].size(); ++i) {
        if (!cx_.objs[k][i].alive) continue;
        const Object& a = cx_.objs[k][i];
        // pick the isomorphism entry with the least fill-in
        std::uint32_t best = UINT32_MAX;
        std::size_t best_cost = SIZE_MAX;
        S best_u{};
        for (const auto& [j, f] : cx_.rows[k][i].out) {
          const Object& b = cx_.objs[k + 1][j];
          if (b.tangle != a.tangle || b.q != a.q || f.size() != 1 || f[0].dots != 0 || !R_.is_unit(f[0].coeff))
            continue;
          const std::size_t cost = (cx_.rows[k + 1][j].in.size() - 1) * (cx_.rows[k][i].out.size() - 1);
          if (cost < best_cost || (cost == best_cost && j < best)) {
            best = j;
            best_cost = cost;
            best_u = f[0].coeff;
          }
        }
        if (best == UINT32_MAX) continue;
        cancel(k, i, best, best_u);
        progress = true;
      }
  }
}

template <class Ring>
void Scanner<Ring>::compact() {
  std::vector<std::vector<std::uint32_t>> remap(cx_.objs.size());
  for (std::size_t k = 0; k < cx_.objs.size(); ++k) {
    remap[k].assign(cx_.objs[k].size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < cx_.objs[k].size(); ++i)
      if (cx_.objs[k][i].alive) remap[k][i] = next++;
  }
  std::vector<std::vector<Object>> objs(cx_.objs.size());
  std::vector<std::vector<Row<S>>> rows(cx_.objs.size());
  for (std::size_t k = 0; k < cx_.objs.size(); ++k) {
    for (std::size_t i = 0; i < cx_.objs[k].size(); ++i) {
      if (!cx_.objs[k][i].alive) continue;
      objs[k].push_back(cx_.objs[k][i]);
      Row<S> r;
      for (auto& [j, f] : cx_.rows[k][i].out) r.out.emplace(remap[k + 1][j], std::move(f));
      for (std::uint32_t w : cx_.rows[k][i].in) r.in.insert(remap[k - 1][w]);
      rows[k].push_back(std::move(r));
    }
  }
  // trim empty layers at both ends
  std::size_t lo = 0, hi = objs.size();
  while (lo < hi && objs[lo].empty()) ++lo;
  while (hi > lo && objs[hi - 1].empty()) --hi;
  cx_.h0 += static_cast<int>(lo);
  cx_.objs.assign(std::make_move_iterator(objs.begin() + lo), std::make_move_iterator(objs.begin() + hi));
  cx_.rows.assign(std::make_move_iterator(rows.begin() + lo), std::make_move_iterator(rows.begin() + hi));
}

// Order crossings greedily so each new crossing shares as many edges as
// possible with the current boundary; the start crossing is the one whose
// greedy order keeps the widest boundary smallest.
std::vector<std::size_t> scan_order(const std::vector<std::array<int, 4>>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> best;
  std::pair<std::size_t, std::size_t> best_cost{SIZE_MAX, SIZE_MAX};
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<char> used(n, 0);
    std::multiset<int> bdry;
    auto add = [&](std::size_t c) {
      used[c] = 1;
      for (int l : xs[c]) {
        auto it = bdry.find(l);
        if (it != bdry.end())
          bdry.erase(it);
        else
          bdry.insert(l);
      }
    };
    // labels repeated inside one crossing cancel against themselves above
    std::vector<std::size_t> order{start};
    add(start);
    std::size_t widest = bdry.size(), sum = bdry.size();
    while (order.size() < n) {
      std::size_t pick = n;
      int pick_shared = -1;
      std::size_t pick_size = SIZE_MAX;
      for (std::size_t c = 0; c < n; ++c) {
        if (used[c]) continue;
        int shared = 0;
        for (int l : xs[c]) shared += static_cast<int>(bdry.count(l));
        const std::size_t size_after = bdry.size() + 4 - 2 * static_cast<std::size_t>(shared);
        if (shared > pick_shared || (shared == pick_shared && size_after < pick_size)) {
          pick = c;
          pick_shared = shared;
          pick_size = size_after;
        }
      }
      order.push_back(pick);
      add(pick);
      widest = std::max(widest, bdry.size());
      sum += bdry.size();
    }
    if (std::make_pair(widest, sum) < best_cost) {
      best_cost = {widest, sum};
      best = order;
    }
  }
  return best;
}

}  // namespace

template <class Ring>
GradedComplex Scanner<Ring>::run(const PlanarDiagram& d, ScalarDomain domain) {
  GradedComplex out;
  out.domain = domain;
  const std::size_t n = d.crossing_count();
  if (n == 0) {
    out.rank[{0, 0}] = 1;
    return out;
  }

  // Cut the diagram at the basepoint: the occurrence where the basepoint
  // edge enters a crossing gets its own label, so both ends stay open.
  std::vector<std::array<int, 4>> xs(n);
  const int e = d.basepoint_edge();
  bool cut = false;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = d.crossings()[i].e;
    const int over_in = d.sign(i) > 0 ? 3 : 1;
    for (int s : {0, over_in})
      if (!cut && xs[i][s] == e) {
        xs[i][s] = kCutLabel;
        cut = true;
      }
  }
  if (!cut) throw InternalError("scan: basepoint edge has no incoming end");

  cx_ = Complex<S>();
  cx_.objs = {{Object{cx_.tangles.intern({}), 0, true}}};
  cx_.rows = {std::vector<Row<S>>(1)};
  for (std::size_t c : scan_order(xs)) {
    add_crossing(xs[c]);
    reduce();
    compact();
  }

  if (cx_.boundary.size() != 2) throw InternalError("scan: residual boundary is not a single arc");
  const int nm = d.negative_count(), np = d.positive_count();
  std::vector<std::vector<std::size_t>> pos(cx_.objs.size());
  for (std::size_t k = 0; k < cx_.objs.size(); ++k)
    for (const Object& o : cx_.objs[k]) {
      const Bigrading hq{cx_.h0 + static_cast<int>(k) - nm, o.q + np - 2 * nm};
      pos[k].push_back(out.rank[hq]++);
    }
  std::map<Bigrading, std::vector<std::tuple<std::size_t, std::size_t, mpq_class>>> entries;
  for (std::size_t k = 0; k + 1 < cx_.objs.size(); ++k)
    for (std::size_t i = 0; i < cx_.objs[k].size(); ++i)
      for (const auto& [j, f] : cx_.rows[k][i].out) {
        if (f.size() != 1 || f[0].dots != 0) throw InternalError("scan: residual morphism is not scalar");
        const Object& a = cx_.objs[k][i];
        if (cx_.objs[k + 1][j].q != a.q) throw InternalError("scan: residual entry changes q");
        const Bigrading hq{cx_.h0 + static_cast<int>(k) - nm, a.q + np - 2 * nm};
        entries[hq].emplace_back(pos[k + 1][j], pos[k][i], R_.to_mpq(f[0].coeff));
      }
  for (const auto& [hq, r] : out.rank) {
    auto it = out.rank.find({hq.first + 1, hq.second});
    if (it == out.rank.end()) continue;
    ExactMatrix m(it->second, r, domain);
    for (const auto& [row, col, v] : entries[hq]) m.set(row, col, v);
    out.d.emplace(hq, std::move(m));
  }
  return out;
}

GradedComplex scan_integral(const PlanarDiagram& d, const ScanLimits& lim) {
  try {
    CheckedIntRing R;
    return Scanner<CheckedIntRing>(R, lim).run(d, ScalarDomain::integers());
  } catch (const ArithmeticOverflow&) {
    BigIntRing R;
    return Scanner<BigIntRing>(R, lim).run(d, ScalarDomain::integers());
  }
}

GradedComplex scan_mod_p(const PlanarDiagram& d, std::uint32_t p, const ScanLimits& lim) {
  PrimeFieldRing R{p};
  return Scanner<PrimeFieldRing>(R, lim).run(d, ScalarDomain::prime_field(p));
}

}  // namespace khdetect::detail
