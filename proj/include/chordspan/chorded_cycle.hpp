#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chordspan/intmath.hpp"

namespace chordspan {

using Vertex = Int;

struct Edge {
  Vertex a = 0;
  Vertex b = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex x, Vertex y) {
  if (x == y) throw std::invalid_argument("edge endpoints must be distinct");
  return x < y ? Edge{x, y} : Edge{y, x};
}

inline std::string edge_str(const Edge& e) {
  return "{" + std::to_string(e.a) + "," + std::to_string(e.b) + "}";
}

// The cycle 1..n (host edges {i,i+1} and {1,n}) plus a set of chords.
// Immutable after construction; chords are kept sorted and deduplicated,
// so iteration order is the lexicographic output contract.
class ChordedCycle {
 public:
  explicit ChordedCycle(Vertex n, std::vector<Edge> chords = {})
      : n_(n), chords_(std::move(chords)) {
    if (n_ < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
    for (Edge& e : chords_) {
      e = make_edge(e.a, e.b);
      check_vertex(e.a);
      check_vertex(e.b);
      if (host(e.a, e.b))
        throw std::invalid_argument("chord " + edge_str(e) + " is a host edge of C_" + std::to_string(n_));
    }
    std::sort(chords_.begin(), chords_.end());
    chords_.erase(std::unique(chords_.begin(), chords_.end()), chords_.end());
  }

  Vertex n() const { return n_; }
  const std::vector<Edge>& chords() const { return chords_; }
  Int chord_count() const { return static_cast<Int>(chords_.size()); }

  bool is_host_edge(Vertex a, Vertex b) const {
    check_pair(a, b);
    return host(a, b);
  }

  bool is_chord(Vertex a, Vertex b) const {
    check_pair(a, b);
    return std::binary_search(chords_.begin(), chords_.end(), make_edge(a, b));
  }

  bool has_edge(Vertex a, Vertex b) const { return is_host_edge(a, b) || is_chord(a, b); }

  // Set-semantics union; adding a chord already present is a no-op.
  ChordedCycle with_chords(std::span<const Edge> extra) const {
    std::vector<Edge> all = chords_;
    all.insert(all.end(), extra.begin(), extra.end());
    return ChordedCycle(n_, std::move(all));
  }

 private:
  bool host(Vertex a, Vertex b) const {
    Vertex lo = std::min(a, b);
    Vertex hi = std::max(a, b);
    return hi - lo == 1 || (lo == 1 && hi == n_);
  }
  void check_vertex(Vertex v) const {
    if (v < 1 || v > n_)
      throw std::out_of_range("vertex " + std::to_string(v) + " not in 1.." + std::to_string(n_));
  }
  void check_pair(Vertex a, Vertex b) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("vertex pair must be distinct");
  }

  Vertex n_;
  std::vector<Edge> chords_;
};

// Explicit vertex sequence v_1..v_l; the cycle closes v_l -> v_1.
struct WitnessCycle {
  std::vector<Vertex> vertices;
  std::vector<Edge> chord_edges;  // sorted
  Int length() const { return static_cast<Int>(vertices.size()); }
};

// Classifies the cyclic edges of `vertices` against a sorted chord list.
inline std::vector<Edge> chord_edges_of(std::span<const Vertex> vertices,
                                        std::span<const Edge> sorted_chords) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Edge e = make_edge(vertices[i], vertices[(i + 1) % vertices.size()]);
    if (std::binary_search(sorted_chords.begin(), sorted_chords.end(), e)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class WitnessStatus { kPass, kTooShort, kBadVertex, kRepeatedVertex, kNonEdge, kChordCount };

struct WitnessReport {
  WitnessStatus status = WitnessStatus::kPass;
  Int length = 0;
  Int required = 0;     // chord quota asked for
  Int chord_count = 0;  // chords actually used (when edges all exist)
  std::vector<Edge> chord_edges;
  std::optional<Vertex> bad_vertex;
  std::optional<Edge> missing_edge;

  bool pass() const { return status == WitnessStatus::kPass; }

  std::string describe() const {
    switch (status) {
      case WitnessStatus::kPass:
        return "PASS: length=" + std::to_string(length) + ", chord edges=" + std::to_string(chord_count);
      case WitnessStatus::kTooShort:
        return "FAIL(short): " + std::to_string(length) + " vertices, a cycle needs at least 3";
      case WitnessStatus::kBadVertex:
        return "FAIL(vertex): vertex " + std::to_string(bad_vertex.value_or(0)) + " out of range";
      case WitnessStatus::kRepeatedVertex:
        return "FAIL(repeat): vertex " + std::to_string(bad_vertex.value_or(0)) + " repeated";
      case WitnessStatus::kNonEdge:
        return "FAIL(non-edge): " + (missing_edge ? edge_str(*missing_edge) : std::string("?")) + " is not an edge";
      case WitnessStatus::kChordCount:
        return "FAIL(count): " + std::to_string(chord_count) + " chord edges, required " + std::to_string(required);
    }
    return "?";
  }
};

// The acceptance predicate: PASS iff the vertices are distinct, every cyclic
// consecutive pair is an edge, and exactly k of the cycle's edges are chords.
inline WitnessReport validate_witness(const ChordedCycle& g, std::span<const Vertex> w, Int k) {
  WitnessReport rep;
  rep.length = static_cast<Int>(w.size());
  rep.required = k;
  if (rep.length < 3) {
    rep.status = WitnessStatus::kTooShort;
    return rep;
  }
  for (Vertex v : w) {
    if (v < 1 || v > g.n()) {
      rep.status = WitnessStatus::kBadVertex;
      rep.bad_vertex = v;
      return rep;
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
  for (Vertex v : w) {
    if (seen[static_cast<std::size_t>(v)]) {
      rep.status = WitnessStatus::kRepeatedVertex;
      rep.bad_vertex = v;
      return rep;
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    Vertex a = w[i];
    Vertex b = w[(i + 1) % w.size()];
    if (g.is_host_edge(a, b)) continue;
    if (g.is_chord(a, b)) {
      rep.chord_edges.push_back(make_edge(a, b));
      continue;
    }
    rep.status = WitnessStatus::kNonEdge;
    rep.missing_edge = make_edge(a, b);
    return rep;
  }
  std::sort(rep.chord_edges.begin(), rep.chord_edges.end());
  rep.chord_count = static_cast<Int>(rep.chord_edges.size());
  if (rep.chord_count != k) {
    rep.status = WitnessStatus::kChordCount;
    return rep;
  }
  return rep;
}

}  // namespace chordspan
