#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chordspan/chorded_cycle.hpp"
#include "chordspan/intmath.hpp"

namespace chordspan {

// q(x) = b^x + 2x, the joint vertex shared by consecutive blocks.
inline Vertex q_value(Int b, Int x) {
  if (b < 3) throw std::invalid_argument("q_value: base must be at least 3");
  if (x < 0) throw std::invalid_argument("q_value: exponent must be nonnegative");
  return checked_add(checked_pow(b, x), checked_mul(2, x));
}

// G_b(i,e): the host interval [i, i+2+b^{e+1}-b^e] plus b base chords
// fanning out of the base point i at stride b^e.
struct Block {
  Int b = 0;
  Vertex base_point = 0;
  Int level = 0;
  Vertex stride = 0;    // b^level
  Vertex first = 0;     // base_point
  Vertex last = 0;      // base_point + 2 + (b-1)*stride
  Int chord_limit = 0;  // base chords j = 0..chord_limit are present

  Vertex chord_target(Int j) const { return base_point + 2 + j * stride; }

  std::vector<Edge> base_chords() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(chord_limit) + 1);
    for (Int j = 0; j <= chord_limit; ++j) out.push_back(make_edge(base_point, chord_target(j)));
    return out;
  }

  Int outer_edge_count() const { return last - first; }
};

inline Block make_block(Int b, Vertex i, Int e) {
  if (b < 3) throw std::invalid_argument("make_block: base must be at least 3");
  if (i < 1) throw std::invalid_argument("make_block: base point must be positive");
  if (e < 0) throw std::invalid_argument("make_block: level must be nonnegative");
  Block blk;
  blk.b = b;
  blk.base_point = i;
  blk.level = e;
  blk.stride = checked_pow(b, e);
  blk.first = i;
  blk.last = checked_add(i, checked_add(2, checked_mul(blk.stride, b - 1)));
  blk.chord_limit = b - 1;
  return blk;
}

// H_b(k): blocks at base points q(0), ..., q(k-1), chained so that
// consecutive blocks share exactly the joint vertex. Vertices 1..q(k),
// b^k+2k-1 outer edges forming a path, bk chords.
struct BlockChain {
  Int b = 0;
  Int k = 0;
  std::vector<Vertex> q;  // q[0..k]
  std::vector<Block> blocks;
  std::vector<Edge> chords;  // sorted, deduplicated

  Vertex vertex_count() const { return q.back(); }
  Int chord_count() const { return static_cast<Int>(chords.size()); }
  Int edge_count() const { return (q.back() - 1) + chord_count(); }
};

inline BlockChain build_H(Int b, Int k) {
  if (k < 2) throw std::invalid_argument("build_H: k must be at least 2");
  BlockChain h;
  h.b = b;
  h.k = k;
  for (Int x = 0; x <= k; ++x) h.q.push_back(q_value(b, x));
  for (Int e = 0; e < k; ++e) {
    Block blk = make_block(b, h.q[static_cast<std::size_t>(e)], e);
    internal_check(blk.last == h.q[static_cast<std::size_t>(e) + 1], "block must end at the next joint");
    for (const Edge& c : blk.base_chords()) h.chords.push_back(c);
    h.blocks.push_back(blk);
  }
  std::sort(h.chords.begin(), h.chords.end());
  h.chords.erase(std::unique(h.chords.begin(), h.chords.end()), h.chords.end());
  internal_check(h.chord_count() == checked_mul(b, k), "blocks must contribute bk distinct chords");
  internal_check(h.vertex_count() == checked_add(checked_pow(b, k), 2 * k), "vertex count b^k + 2k");
  return h;
}

// Base-b digits c_0..c_{count-1}, little-endian.
struct DigitVector {
  Int base = 0;
  std::vector<Int> digits;

  Int value() const {
    Int acc = 0;
    Int p = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i > 0) p = checked_mul(p, base);
      acc = checked_add(acc, checked_mul(digits[i], p));
    }
    return acc;
  }

  static DigitVector decompose(Int value, Int base, Int count) {
    if (base < 2) throw std::invalid_argument("digit base must be at least 2");
    if (count < 1) throw std::invalid_argument("digit count must be positive");
    if (value < 0 || cmp_pow(base, count, value) <= 0)
      throw std::invalid_argument("value " + std::to_string(value) + " does not fit in " +
                                  std::to_string(count) + " base-" + std::to_string(base) + " digits");
    DigitVector dv;
    dv.base = base;
    dv.digits.reserve(static_cast<std::size_t>(count));
    for (Int i = 0; i < count; ++i) {
      dv.digits.push_back(value % base);
      value /= base;
    }
    return dv;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(digits[i]);
    }
    return s + "]";
  }
};

// Path of length 1 + c*b^e from q(e) to q(e+1): one base chord down to
// q(e+1) - c*b^e, then c*b^e outer edges.
inline std::vector<Vertex> block_path(Int b, Int e, Int c) {
  if (c < 0 || c >= b) throw std::invalid_argument("digit must lie in 0..b-1");
  Vertex from = q_value(b, e);
  Vertex to = q_value(b, e + 1);
  Vertex x = to - checked_mul(c, checked_pow(b, e));
  std::vector<Vertex> path;
  path.reserve(static_cast<std::size_t>(to - x) + 2);
  path.push_back(from);
  for (Vertex v = x; v <= to; ++v) path.push_back(v);
  return path;
}

// All derived parameters of F_k(n). Vertices 1..n; blocks e <= k-2 are
// complete, the top block is truncated at n; {1, m} is a chord and {1, n}
// is the closing host edge.
struct ConstructionPlan {
  Vertex n = 0;
  Int k = 0;
  Int b = 0;               // smallest b with b^k >= n
  std::vector<Vertex> q;   // q[0..k]
  Vertex m = 0;            // q[k-1]
  Int alpha = 0;           // truncation index of the top block
  std::vector<Block> blocks;
  std::vector<Edge> chords;  // sorted; includes {1, m}

  Vertex top_stride() const { return blocks.back().stride; }  // b^{k-1}
  Vertex min_length() const { return k > 3 ? k : 3; }
  Int chord_count() const { return static_cast<Int>(chords.size()); }
  ChordedCycle graph() const { return ChordedCycle(n, chords); }
};

// The unique alpha in 0..b-2 with m + 2 + alpha*b^{k-1} <= n < m + 2 + (alpha+1)*b^{k-1}.
inline Int compute_alpha(Vertex n, Int k, Int b, Vertex m) {
  Int big = checked_pow(b, k - 1);
  internal_check(n >= m + 2, "alpha requires n >= m + 2");
  Int alpha = (n - m - 2) / big;
  internal_check(alpha <= b - 2, "alpha must not exceed b - 2");
  internal_check(m + 2 + alpha * big <= n && n < m + 2 + (alpha + 1) * big, "alpha interval");
  // coverage inequality: n + 1 <= (alpha + 2) b^{k-1} + 2k, which makes the
  // short and long length families meet with no gap
  internal_check(n + 1 <= checked_add(checked_mul(alpha + 2, big), 2 * k), "length family coverage");
  return alpha;
}

inline ConstructionPlan build_F(Vertex n, Int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (cmp_pow(k + 2, k, n) > 0) {
    std::string msg = "requires n >= (k+2)^k";
    try {
      msg += " = " + std::to_string(checked_pow(k + 2, k));
    } catch (const std::overflow_error&) {
    }
    throw std::domain_error(msg + ", got n = " + std::to_string(n));
  }
  ConstructionPlan plan;
  plan.n = n;
  plan.k = k;
  plan.b = ceil_root(n, k);
  internal_check(plan.b >= k + 2, "base must be at least k + 2");
  internal_check(cmp_pow(plan.b - 1, k, n) < 0, "(b-1)^k < n");
  internal_check(cmp_pow(plan.b, k, n) >= 0, "n <= b^k");
  internal_check(n > checked_add(checked_pow(plan.b, k - 1), 2 * k), "n > b^{k-1} + 2k");
  for (Int x = 0; x <= k; ++x) plan.q.push_back(q_value(plan.b, x));
  plan.m = plan.q[static_cast<std::size_t>(k) - 1];
  plan.alpha = compute_alpha(n, k, plan.b, plan.m);
  for (Int e = 0; e + 1 < k; ++e) plan.blocks.push_back(make_block(plan.b, plan.q[static_cast<std::size_t>(e)], e));
  Block top = make_block(plan.b, plan.m, k - 1);
  top.chord_limit = plan.alpha;  // base chords with far endpoint > n are cut
  internal_check(top.chord_target(plan.alpha) <= n, "surviving base chords end at most at n");
  plan.blocks.push_back(top);
  for (const Block& blk : plan.blocks)
    for (const Edge& c : blk.base_chords()) plan.chords.push_back(c);
  plan.chords.push_back(make_edge(1, plan.m));  // already a base chord when k == 2
  std::sort(plan.chords.begin(), plan.chords.end());
  plan.chords.erase(std::unique(plan.chords.begin(), plan.chords.end()), plan.chords.end());
  Int expected = checked_mul(plan.b, k - 1) + (plan.alpha + 1) + (k == 2 ? 0 : 1);
  internal_check(plan.chord_count() == expected, "plan chord count");
  internal_check(plan.chord_count() <= checked_add(checked_mul(k, plan.b), 1), "plan chord budget k*b + 1");
  return plan;
}

// Path from 1 to m through the k-1 complete blocks; digit c_e picks the
// base chord used in block e. Length k-1 + value(digits), exactly k-1
// chord edges.
inline std::vector<Vertex> path_P(const ConstructionPlan& plan, const DigitVector& digits) {
  if (digits.base != plan.b || static_cast<Int>(digits.digits.size()) != plan.k - 1)
    throw std::invalid_argument("path_P needs k-1 base-b digits");
  std::vector<Vertex> path{1};
  for (Int e = 0; e + 1 < plan.k; ++e) {
    std::vector<Vertex> seg = block_path(plan.b, e, digits.digits[static_cast<std::size_t>(e)]);
    internal_check(seg.front() == path.back(), "block paths chain at the joints");
    path.insert(path.end(), seg.begin() + 1, seg.end());
  }
  internal_check(path.back() == plan.m, "path_P ends at m");
  return path;
}

// Path m -> m+2+j*b^{k-1} (base chord of the truncated block) -> outer
// edges to n -> host edge to 1. Exactly one chord edge; length
// n + 2 - (j+1)*b^{k-1} - 2k.
inline std::vector<Vertex> path_Q(const ConstructionPlan& plan, Int j) {
  if (j < 0 || j > plan.alpha)
    throw std::invalid_argument("no surviving base chord for j = " + std::to_string(j) +
                                " (alpha = " + std::to_string(plan.alpha) + ")");
  Vertex x = plan.m + 2 + j * plan.top_stride();
  std::vector<Vertex> path;
  path.reserve(static_cast<std::size_t>(plan.n - x) + 3);
  path.push_back(plan.m);
  for (Vertex v = x; v <= plan.n; ++v) path.push_back(v);
  path.push_back(1);
  return path;
}

enum class WitnessSource { kL1, kL2, kTail };

inline const char* to_string(WitnessSource s) {
  switch (s) {
    case WitnessSource::kL1:
      return "L1";
    case WitnessSource::kL2:
      return "L2";
    case WitnessSource::kTail:
      return "tail";
  }
  return "?";
}

struct LengthWitness {
  WitnessSource source = WitnessSource::kL1;
  WitnessCycle cycle;
  std::string detail;  // human-readable provenance
};

// Decodes a target length l in {max(k,3), ..., n-k} into an explicit
// witness cycle with exactly k chord edges. Short lengths close path_P
// with the chord {m,1}; long lengths route path_P through the truncated
// block and the host edge {n,1}. When a length lies in both families the
// short one wins.
inline LengthWitness decode_length(const ConstructionPlan& plan, Vertex l) {
  if (l == 2 && plan.k == 2)
    throw std::invalid_argument("l=2 excluded by simple-graph convention");
  if (l < plan.min_length() || l > plan.n - plan.k)
    throw std::out_of_range("decode_length covers lengths " + std::to_string(plan.min_length()) + ".." +
                            std::to_string(plan.n - plan.k) + "; tail lengths " +
                            std::to_string(plan.n - plan.k + 1) + ".." + std::to_string(plan.n) +
                            " come from tail_witness");
  const Vertex big = plan.top_stride();
  LengthWitness w;
  std::vector<Vertex> verts;
  if (l <= plan.k + big - 1) {
    DigitVector digits = DigitVector::decompose(l - plan.k, plan.b, plan.k - 1);
    verts = path_P(plan, digits);  // the chord {m, 1} closes the cycle
    w.source = WitnessSource::kL1;
    w.detail = "L1 digits=" + digits.str();
  } else {
    Vertex deficit = plan.n + 1 - plan.k - l;  // = (j+1)*b^{k-1} - value(digits)
    Int j = (deficit + big - 1) / big - 1;
    Vertex value = (j + 1) * big - deficit;
    internal_check(0 <= j && j <= plan.alpha, "truncation digit within 0..alpha");
    DigitVector digits = DigitVector::decompose(value, plan.b, plan.k - 1);
    verts = path_P(plan, digits);
    std::vector<Vertex> back = path_Q(plan, j);
    internal_check(back.front() == verts.back() && back.back() == verts.front(),
                   "paths share exactly their endpoints");
    verts.insert(verts.end(), back.begin() + 1, back.end() - 1);
    w.source = WitnessSource::kL2;
    w.detail = "L2 j=" + std::to_string(j) + " digits=" + digits.str();
  }
  w.cycle.vertices = std::move(verts);
  w.cycle.chord_edges = chord_edges_of(w.cycle.vertices, plan.chords);
  internal_check(w.cycle.length() == l, "decoded witness length");
  internal_check(static_cast<Int>(w.cycle.chord_edges.size()) == plan.k, "decoded witness chord count");
  return w;
}

enum class GadgetKind { kSkip, kCross, kTriple };

// A chord pattern spliced into the host cycle near the anchor. skip(a,t)
// shortens by t-1 with one chord; cross(x,s) shortens by s with two
// chords; triple(x) shortens by nothing with three chords.
struct TailGadget {
  GadgetKind kind = GadgetKind::kCross;
  Vertex anchor = 0;
  Int param = 0;  // kSkip: t >= 2; kCross: s >= 0; kTriple: unused

  Vertex interval_end() const {
    switch (kind) {
      case GadgetKind::kSkip:
        return anchor + param;
      case GadgetKind::kCross:
        return anchor + 3 + param;
      case GadgetKind::kTriple:
        return anchor + 4;
    }
    return anchor;
  }

  Int shorten() const {
    switch (kind) {
      case GadgetKind::kSkip:
        return param - 1;
      case GadgetKind::kCross:
        return param;
      case GadgetKind::kTriple:
        return 0;
    }
    return 0;
  }

  Int chord_cost() const {
    switch (kind) {
      case GadgetKind::kSkip:
        return 1;
      case GadgetKind::kCross:
        return 2;
      case GadgetKind::kTriple:
        return 3;
    }
    return 0;
  }

  std::vector<Edge> chords() const {
    switch (kind) {
      case GadgetKind::kSkip:
        return {make_edge(anchor, anchor + param)};
      case GadgetKind::kCross:
        return {make_edge(anchor, anchor + 2), make_edge(anchor + 1, anchor + 3 + param)};
      case GadgetKind::kTriple:
        return {make_edge(anchor, anchor + 3), make_edge(anchor + 1, anchor + 3),
                make_edge(anchor + 2, anchor + 4)};
    }
    return {};
  }

  void append_segment(std::vector<Vertex>& out) const {
    switch (kind) {
      case GadgetKind::kSkip:
        out.push_back(anchor);
        out.push_back(anchor + param);
        return;
      case GadgetKind::kCross:
        out.push_back(anchor);
        out.push_back(anchor + 2);
        out.push_back(anchor + 1);
        out.push_back(anchor + 3 + param);
        return;
      case GadgetKind::kTriple:
        out.push_back(anchor);
        out.push_back(anchor + 3);
        out.push_back(anchor + 1);
        out.push_back(anchor + 2);
        out.push_back(anchor + 4);
        return;
    }
  }

  std::string describe() const {
    switch (kind) {
      case GadgetKind::kSkip:
        return "skip(" + std::to_string(anchor) + "," + std::to_string(param) + ")";
      case GadgetKind::kCross:
        return "cross(" + std::to_string(anchor) + "," + std::to_string(param) + ")";
      case GadgetKind::kTriple:
        return "triple(" + std::to_string(anchor) + ")";
    }
    return "?";
  }
};

inline TailGadget skip_gadget(Vertex anchor, Int t) {
  if (t < 2) throw std::invalid_argument("skip gadget needs t >= 2");
  return {GadgetKind::kSkip, anchor, t};
}
inline TailGadget cross_gadget(Vertex anchor, Int s) {
  if (s < 0) throw std::invalid_argument("cross gadget needs s >= 0");
  return {GadgetKind::kCross, anchor, s};
}
inline TailGadget triple_gadget(Vertex anchor) { return {GadgetKind::kTriple, anchor, 0}; }

struct FullConstruction {
  ConstructionPlan plan;
  std::vector<std::vector<TailGadget>> tail;  // [d] -> gadgets for length n-d
  std::vector<Edge> tail_chords;              // chords added beyond the plan, sorted
  std::vector<Edge> chords;                   // plan chords + tail chords, sorted
  std::vector<std::string> warnings;

  Vertex n() const { return plan.n; }
  Int k() const { return plan.k; }
  Int chord_count() const { return static_cast<Int>(chords.size()); }
  ChordedCycle graph() const { return ChordedCycle(plan.n, chords); }
  LengthWitness witness(Vertex l) const;
};

// Gadget assignment for each tail length n-d, d = 0..k-1. A run of fixed
// cross(.,0) gadgets burns chords in pairs without shortening; one final
// variable gadget absorbs the shortening d and fixes the parity:
//   k even:            (k-2)/2 x cross(.,0) + cross(., d)
//   k odd,  d == 0:    (k-3)/2 x cross(.,0) + triple(.)
//   k odd,  d >= 1:    (k-1)/2 x cross(.,0) + skip(., d+1)
// Anchors are assigned greedily from vertex 1 upward in disjoint host
// intervals, so the shared cross gadgets reuse the same chords across
// lengths and the first cross reuses the plan chord {1,3}.
inline FullConstruction plan_tail(const ConstructionPlan& plan) {
  FullConstruction full;
  full.plan = plan;
  const Int k = plan.k;
  for (Int d = 0; d < k; ++d) {
    std::vector<TailGadget> gs;
    Int fixed = (k % 2 == 0) ? (k - 2) / 2 : (d == 0 ? (k - 3) / 2 : (k - 1) / 2);
    Vertex x = 1;
    for (Int i = 0; i < fixed; ++i) {
      gs.push_back(cross_gadget(x, 0));
      x = gs.back().interval_end() + 1;
    }
    if (k % 2 == 0)
      gs.push_back(cross_gadget(x, d));
    else if (d == 0)
      gs.push_back(triple_gadget(x));
    else
      gs.push_back(skip_gadget(x, d + 1));
    Int cost = 0;
    Int shorten = 0;
    for (const TailGadget& g : gs) {
      cost += g.chord_cost();
      shorten += g.shorten();
    }
    internal_check(cost == k, "tail gadgets burn exactly k chords");
    internal_check(shorten == d, "tail gadgets shorten exactly d");
    internal_check(gs.back().interval_end() < plan.n, "tail gadgets fit before vertex n");
    full.tail.push_back(std::move(gs));
  }
  std::vector<Edge> added;
  for (const auto& gs : full.tail)
    for (const TailGadget& g : gs)
      for (const Edge& c : g.chords())
        if (!std::binary_search(plan.chords.begin(), plan.chords.end(), c)) added.push_back(c);
  std::sort(added.begin(), added.end());
  added.erase(std::unique(added.begin(), added.end()), added.end());
  internal_check(static_cast<Int>(added.size()) <= checked_mul(k, k), "tail chord budget k^2");
  full.tail_chords = added;
  full.chords = plan.chords;
  full.chords.insert(full.chords.end(), added.begin(), added.end());
  std::sort(full.chords.begin(), full.chords.end());
  return full;
}

// The host cycle with the gadget segments for length l spliced in.
inline LengthWitness tail_witness(const FullConstruction& full, Vertex l) {
  const Vertex n = full.plan.n;
  const Int k = full.plan.k;
  if (l < n - k + 1 || l > n)
    throw std::out_of_range("tail_witness covers lengths " + std::to_string(n - k + 1) + ".." +
                            std::to_string(n));
  const auto& gadgets = full.tail[static_cast<std::size_t>(n - l)];
  LengthWitness w;
  w.source = WitnessSource::kTail;
  std::vector<Vertex>& verts = w.cycle.vertices;
  verts.reserve(static_cast<std::size_t>(l));
  Vertex pos = 1;
  std::string names;
  for (const TailGadget& g : gadgets) {
    for (Vertex v = pos; v < g.anchor; ++v) verts.push_back(v);
    g.append_segment(verts);
    pos = g.interval_end() + 1;
    if (!names.empty()) names += ",";
    names += g.describe();
  }
  for (Vertex v = pos; v <= n; ++v) verts.push_back(v);
  w.detail = "tail gadgets=[" + names + "]";
  w.cycle.chord_edges = chord_edges_of(verts, full.chords);
  internal_check(w.cycle.length() == l, "tail witness length");
  internal_check(static_cast<Int>(w.cycle.chord_edges.size()) == k, "tail witness chord count");
  return w;
}

inline LengthWitness FullConstruction::witness(Vertex l) const {
  if (l == 2 && plan.k == 2)
    throw std::invalid_argument("l=2 excluded by simple-graph convention");
  if (l >= plan.n - plan.k + 1 && l <= plan.n) return tail_witness(*this, l);
  return decode_length(plan, l);
}

// Full pipeline: for every l in {max(k,3), ..., n} the returned object
// yields a witness cycle with exactly k chord edges. Chord count is
// asserted against k*ceil(n^{1/k}) + k^2 + 1 and a warning is recorded
// if it ever exceeds k*ceil(n^{1/k}) + k^2.
inline FullConstruction construct(Vertex n, Int k) {
  FullConstruction full = plan_tail(build_F(n, k));
  Int stated = checked_add(checked_mul(k, full.plan.b), checked_mul(k, k));
  internal_check(full.chord_count() <= checked_add(stated, 1), "chord budget k*ceil(n^{1/k}) + k^2 + 1");
  if (full.chord_count() > stated)
    full.warnings.push_back("chord count " + std::to_string(full.chord_count()) +
                            " exceeds k*ceil(n^{1/k}) + k^2 = " + std::to_string(stated));
  return full;
}

}  // namespace chordspan
