#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "chordspan/chorded_cycle.hpp"
#include "chordspan/intmath.hpp"

namespace chordspan {

// Lengths every chord set must realize: {max(k,3), ..., n}. For k = 2 the
// nominal lower end l = 2 is excluded (no 2-cycles in a simple graph).
inline std::pair<Vertex, Vertex> required_range(Vertex n, Int k) {
  return {k > 3 ? k : 3, n};
}

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::int64_t ms) {
    if (ms > 0) {
      active_ = true;
      end_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    }
  }
  bool active() const { return active_; }
  bool expired() const { return active_ && std::chrono::steady_clock::now() >= end_; }

 private:
  bool active_ = false;
  std::chrono::steady_clock::time_point end_{};
};

struct SearchConfig {
  std::int64_t time_limit_ms = 0;  // 0 = unlimited
  Int workers = 1;
  bool symmetry_reduction = true;
  bool feasibility_prune = true;
  Int max_chords = -1;      // cap on the subset size searched; -1 = full supply
  std::vector<Edge> hint;   // a chord set known to satisfy the property
};

enum class SearchOutcome { kFound, kNotFound, kInconclusive };

namespace detail {

struct AdjEntry {
  Vertex to = 0;
  bool chord = false;
};

inline std::vector<std::vector<AdjEntry>> adjacency(const ChordedCycle& g) {
  std::vector<std::vector<AdjEntry>> adj(static_cast<std::size_t>(g.n()) + 1);
  for (Vertex v = 1; v <= g.n(); ++v) {
    Vertex prev = v == 1 ? g.n() : v - 1;
    Vertex next = v == g.n() ? 1 : v + 1;
    adj[static_cast<std::size_t>(v)].push_back({prev, false});
    adj[static_cast<std::size_t>(v)].push_back({next, false});
  }
  for (const Edge& e : g.chords()) {
    adj[static_cast<std::size_t>(e.a)].push_back({e.b, true});
    adj[static_cast<std::size_t>(e.b)].push_back({e.a, true});
  }
  return adj;
}

inline std::vector<Int> bfs_dist(const std::vector<std::vector<AdjEntry>>& adj, Vertex s, Int cap) {
  const Int unreachable = cap + 1;
  std::vector<Int> dist(adj.size(), unreachable);
  std::vector<Vertex> frontier{s};
  dist[static_cast<std::size_t>(s)] = 0;
  Int d = 0;
  while (!frontier.empty() && d < cap) {
    std::vector<Vertex> next;
    for (Vertex v : frontier)
      for (const AdjEntry& e : adj[static_cast<std::size_t>(v)])
        if (dist[static_cast<std::size_t>(e.to)] == unreachable) {
          dist[static_cast<std::size_t>(e.to)] = d + 1;
          next.push_back(e.to);
        }
    frontier = std::move(next);
    ++d;
  }
  return dist;
}

}  // namespace detail

// Exhaustive existence search: is there a simple cycle of length exactly l
// using exactly k chord edges? Depth-first backtracking rooted at the
// smallest vertex of the cycle, pruned on remaining-length and
// remaining-chord feasibility. Exact; a deadline turns the answer into
// kInconclusive, never into a wrong kNotFound.
inline SearchOutcome exists_cycle(const ChordedCycle& g, Int l, Int k, const Deadline& deadline = {}) {
  const Vertex n = g.n();
  if (l < 3 || l > n) throw std::invalid_argument("cycle length must lie in 3..n");
  if (k < 0) throw std::invalid_argument("chord quota must be nonnegative");
  if (k > l) return SearchOutcome::kNotFound;
  const auto adj = detail::adjacency(g);
  std::vector<char> on_path(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> path;
  struct Frame {
    Vertex v = 0;
    std::size_t next = 0;
    Int chords = 0;
  };
  std::vector<Frame> stack;
  std::uint64_t ticks = 0;
  for (Vertex s = 1; s + l - 1 <= n; ++s) {
    const auto dist = detail::bfs_dist(adj, s, l);
    stack.clear();
    stack.push_back({s, 0, 0});
    path.assign(1, s);
    on_path[static_cast<std::size_t>(s)] = 1;
    bool found = false;
    while (!stack.empty()) {
      if ((ticks++ & 2047) == 0 && deadline.expired()) return SearchOutcome::kInconclusive;
      Frame& f = stack.back();
      Int depth = static_cast<Int>(path.size()) - 1;  // edges used so far
      if (depth == l - 1) {
        bool host_close = (f.v - s == 1) || (s == 1 && f.v == n);
        if (host_close && f.chords == k) {
          found = true;
        } else if (!host_close && f.chords + 1 == k && g.is_chord(f.v, s)) {
          found = true;
        }
        if (found) break;
        on_path[static_cast<std::size_t>(f.v)] = 0;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      if (f.next < adj[static_cast<std::size_t>(f.v)].size()) {
        const detail::AdjEntry e = adj[static_cast<std::size_t>(f.v)][f.next++];
        if (e.to <= s || on_path[static_cast<std::size_t>(e.to)]) continue;
        Int used = f.chords + (e.chord ? 1 : 0);
        Int rem = l - depth - 1;  // edges still to place, closing edge included
        if (used > k || used + rem < k) continue;
        if (dist[static_cast<std::size_t>(e.to)] > rem) continue;
        stack.push_back({e.to, 0, used});
        path.push_back(e.to);
        on_path[static_cast<std::size_t>(e.to)] = 1;
      } else {
        on_path[static_cast<std::size_t>(f.v)] = 0;
        path.pop_back();
        stack.pop_back();
      }
    }
    for (Vertex v : path) on_path[static_cast<std::size_t>(v)] = 0;
    if (found) return SearchOutcome::kFound;
  }
  return SearchOutcome::kNotFound;
}

enum class LengthState { kWitnessPass, kOracleFound, kMissing, kInconclusive };

inline const char* to_string(LengthState s) {
  switch (s) {
    case LengthState::kWitnessPass:
      return "WITNESS-PASS";
    case LengthState::kOracleFound:
      return "ORACLE-FOUND";
    case LengthState::kMissing:
      return "MISSING";
    case LengthState::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

struct LengthStatus {
  Vertex l = 0;
  LengthState state = LengthState::kMissing;
  bool witness_failed = false;  // a supplied witness failed validation; the oracle decided the state
  std::string detail;
};

struct PropertyReport {
  Vertex n = 0;
  Int k = 0;
  Vertex range_lo = 0;
  Vertex range_hi = 0;
  Int chord_count = 0;
  std::vector<LengthStatus> statuses;
  std::int64_t elapsed_ms = 0;
  std::string note;

  bool has(LengthState s) const {
    for (const LengthStatus& st : statuses)
      if (st.state == s) return true;
    return false;
  }
  bool witness_discrepancy() const {
    for (const LengthStatus& st : statuses)
      if (st.witness_failed) return true;
    return false;
  }
  // Never claims satisfaction while any entry is inconclusive.
  bool satisfied() const { return !has(LengthState::kMissing) && !has(LengthState::kInconclusive); }
};

// Supplies a candidate witness for a length, or nullopt to fall back to
// the oracle. Must be pure and safe to call from several threads.
using WitnessFn = std::function<std::optional<std::vector<Vertex>>(Vertex)>;

inline PropertyReport verify_property(const ChordedCycle& g, Int k, std::span<const Vertex> lengths,
                                      const WitnessFn& witness_fn = {}, const SearchConfig& cfg = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  PropertyReport rep;
  rep.n = g.n();
  rep.k = k;
  auto [lo, hi] = required_range(g.n(), k);
  rep.range_lo = lo;
  rep.range_hi = hi;
  rep.chord_count = g.chord_count();
  if (k == 2) rep.note = "l=2 excluded by simple-graph convention";
  rep.statuses.resize(lengths.size());
  const Deadline deadline(cfg.time_limit_ms);
  auto eval = [&](std::size_t i) {
    const Vertex l = lengths[i];
    LengthStatus st;
    st.l = l;
    bool need_oracle = true;
    if (witness_fn) {
      if (std::optional<std::vector<Vertex>> w = witness_fn(l)) {
        WitnessReport wr = validate_witness(g, *w, k);
        if (wr.pass()) {
          st.state = LengthState::kWitnessPass;
          need_oracle = false;
        } else {
          st.witness_failed = true;
          st.detail = wr.describe();
        }
      }
    }
    if (need_oracle) {
      switch (exists_cycle(g, l, k, deadline)) {
        case SearchOutcome::kFound:
          st.state = LengthState::kOracleFound;
          break;
        case SearchOutcome::kNotFound:
          st.state = LengthState::kMissing;
          break;
        case SearchOutcome::kInconclusive:
          st.state = LengthState::kInconclusive;
          break;
      }
    }
    rep.statuses[i] = std::move(st);
  };
  Int workers = cfg.workers;
  if (workers > static_cast<Int>(lengths.size())) workers = static_cast<Int>(lengths.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < lengths.size(); ++i) eval(i);
  } else {
    std::vector<std::thread> pool;
    for (Int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < lengths.size(); i += static_cast<std::size_t>(workers))
          eval(i);
      });
    for (std::thread& t : pool) t.join();
  }
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Every vertex pair that could be a chord of C_n, lexicographically.
inline std::vector<Edge> chord_candidates(Vertex n) {
  std::vector<Edge> out;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 2; b <= n; ++b) {
      if (a == 1 && b == n) continue;
      out.push_back({a, b});
    }
  return out;
}

namespace detail {

// The 2n relabelings of the dihedral group of C_n, as vertex maps.
inline std::vector<std::vector<Vertex>> dihedral_maps(Vertex n) {
  std::vector<std::vector<Vertex>> maps;
  maps.reserve(static_cast<std::size_t>(2 * n));
  for (Vertex r = 0; r < n; ++r) {
    std::vector<Vertex> rot(static_cast<std::size_t>(n) + 1), ref(static_cast<std::size_t>(n) + 1);
    for (Vertex v = 1; v <= n; ++v) {
      rot[static_cast<std::size_t>(v)] = (v - 1 + r) % n + 1;
      ref[static_cast<std::size_t>(v)] = (n - (v - 1) + r) % n + 1;
    }
    maps.push_back(std::move(rot));
    maps.push_back(std::move(ref));
  }
  return maps;
}

inline std::vector<Edge> apply_map(const std::vector<Vertex>& map, std::span<const Edge> edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges)
    out.push_back(make_edge(map[static_cast<std::size_t>(e.a)], map[static_cast<std::size_t>(e.b)]));
  std::sort(out.begin(), out.end());
  return out;
}

// A sorted chord set is canonical iff no dihedral image is lexicographically smaller.
inline bool is_canonical(std::span<const Edge> sorted_set, const std::vector<std::vector<Vertex>>& maps) {
  for (const auto& mp : maps) {
    std::vector<Edge> img = apply_map(mp, sorted_set);
    if (std::lexicographical_compare(img.begin(), img.end(), sorted_set.begin(), sorted_set.end()))
      return false;
  }
  return true;
}

inline SearchOutcome set_satisfies(Vertex n, Int k, std::span<const Edge> chords,
                                   std::span<const Vertex> lengths, const Deadline& deadline) {
  ChordedCycle g(n, std::vector<Edge>(chords.begin(), chords.end()));
  for (Vertex l : lengths) {
    switch (exists_cycle(g, l, k, deadline)) {
      case SearchOutcome::kNotFound:
        return SearchOutcome::kNotFound;
      case SearchOutcome::kInconclusive:
        return SearchOutcome::kInconclusive;
      case SearchOutcome::kFound:
        break;
    }
  }
  return SearchOutcome::kFound;
}

struct SizeOutcome {
  std::optional<std::vector<Edge>> best;  // lexicographically first satisfying subset
  bool incomplete = false;
  std::uint64_t tested = 0;
};

struct SizeSearcher {
  Vertex n;
  Int k;
  Int size;
  const std::vector<Edge>& cands;
  const std::vector<Vertex>& lengths;
  const std::vector<std::vector<Vertex>>& maps;
  bool symmetry;
  bool prune;
  const Deadline& deadline;

  std::vector<Edge> chosen;
  SizeOutcome out;

  // Lexicographic enumeration of size-`size` supersets of `chosen` drawn
  // from cands[start..]. Returns true to stop (found or gave up).
  bool enumerate(std::size_t start) {
    if (static_cast<Int>(chosen.size()) == size) {
      ++out.tested;
      if (!symmetry || is_canonical(chosen, maps)) {
        switch (set_satisfies(n, k, chosen, lengths, deadline)) {
          case SearchOutcome::kFound:
            out.best = chosen;
            return true;
          case SearchOutcome::kInconclusive:
            out.incomplete = true;
            return true;
          case SearchOutcome::kNotFound:
            break;
        }
      }
      return false;
    }
    if (deadline.expired()) {
      out.incomplete = true;
      return true;
    }
    std::size_t need = static_cast<std::size_t>(size) - chosen.size();
    if (start + need > cands.size()) return false;
    if (prune) {
      // even taking every remaining candidate cannot realize some length
      std::vector<Edge> all = chosen;
      all.insert(all.end(), cands.begin() + static_cast<std::ptrdiff_t>(start), cands.end());
      switch (set_satisfies(n, k, all, lengths, deadline)) {
        case SearchOutcome::kNotFound:
          return false;
        case SearchOutcome::kInconclusive:
          out.incomplete = true;
          return true;
        case SearchOutcome::kFound:
          break;
      }
    }
    for (std::size_t j = start; j + need <= cands.size(); ++j) {
      chosen.push_back(cands[j]);
      bool stop = enumerate(j + 1);
      chosen.pop_back();
      if (stop) return true;
    }
    return false;
  }
};

inline SizeOutcome search_size(Vertex n, Int k, Int size, const std::vector<Edge>& cands,
                               const std::vector<Vertex>& lengths,
                               const std::vector<std::vector<Vertex>>& maps, const SearchConfig& cfg,
                               const Deadline& deadline) {
  if (size == 0) {
    SizeOutcome out;
    out.tested = 1;
    std::vector<Edge> empty;
    if (set_satisfies(n, k, empty, lengths, deadline) == SearchOutcome::kFound) out.best = empty;
    return out;
  }
  Int workers = cfg.workers;
  Int top = static_cast<Int>(cands.size()) - size + 1;
  if (top < 1) return {};
  if (workers > top) workers = top;
  if (workers <= 1) {
    SizeSearcher s{n, k, size, cands, lengths, maps, cfg.symmetry_reduction, cfg.feasibility_prune, deadline, {}, {}};
    s.enumerate(0);
    return s.out;
  }
  // Workers own the top-level branches f = w, w+W, w+2W, ...; within a
  // worker the enumeration order is lexicographic, so the merge below is
  // deterministic regardless of worker count.
  std::vector<SizeOutcome> outs(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (Int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      SizeSearcher s{n, k, size, cands, lengths, maps, cfg.symmetry_reduction, cfg.feasibility_prune, deadline, {}, {}};
      for (Int f = w; f < top; f += workers) {
        s.chosen.assign(1, cands[static_cast<std::size_t>(f)]);
        if (s.enumerate(static_cast<std::size_t>(f) + 1)) break;
      }
      outs[static_cast<std::size_t>(w)] = std::move(s.out);
    });
  for (std::thread& t : pool) t.join();
  SizeOutcome merged;
  for (SizeOutcome& o : outs) {
    merged.tested += o.tested;
    merged.incomplete = merged.incomplete || o.incomplete;
    if (o.best && (!merged.best || std::lexicographical_compare(o.best->begin(), o.best->end(),
                                                                merged.best->begin(), merged.best->end())))
      merged.best = std::move(o.best);
  }
  return merged;
}

}  // namespace detail

struct BruteForceResult {
  Vertex n = 0;
  Int k = 0;
  Int value = 0;  // exact minimum when `exact`, otherwise a verified lower bound
  bool exact = false;
  std::vector<Edge> chord_set;  // a minimum satisfying set (exact results only)
  std::uint64_t subsets_tested = 0;
  std::int64_t elapsed_ms = 0;
};

// Exact minimum chord count: ascends in subset size, enumerates subsets of
// the n(n-3)/2 candidate chords lexicographically (up to dihedral symmetry
// of C_n when enabled), and reports the first satisfying set. Results are
// exact when the enumeration completes; a deadline yields the best
// verified lower bound instead.
inline BruteForceResult brute_force_c(Vertex n, Int k, const SearchConfig& cfg = {}) {
  if (n < 6) throw std::invalid_argument("brute_force_c requires n >= 6");
  if (k < 2) throw std::invalid_argument("brute_force_c requires k >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](BruteForceResult r) {
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  BruteForceResult res;
  res.n = n;
  res.k = k;
  const std::vector<Edge> cands = chord_candidates(n);
  auto [lo, hi] = required_range(n, k);
  std::vector<Vertex> lengths;
  for (Vertex l = lo; l <= hi; ++l) lengths.push_back(l);
  const Deadline deadline(cfg.time_limit_ms);
  const auto maps = detail::dihedral_maps(n);

  switch (detail::set_satisfies(n, k, cands, lengths, deadline)) {
    case SearchOutcome::kNotFound:
      throw std::domain_error("property unsatisfiable even with every chord present");
    case SearchOutcome::kInconclusive:
      return finish(res);  // value 0, inexact: nothing verified
    case SearchOutcome::kFound:
      break;
  }

  std::optional<Int> upper;
  std::vector<Edge> upper_set;
  if (!cfg.hint.empty()) {
    upper_set = ChordedCycle(n, cfg.hint).chords();
    if (detail::set_satisfies(n, k, upper_set, lengths, deadline) == SearchOutcome::kFound)
      upper = static_cast<Int>(upper_set.size());
    else
      upper_set.clear();
  }

  Int cap = cfg.max_chords >= 0 ? std::min<Int>(cfg.max_chords, static_cast<Int>(cands.size()))
                                : static_cast<Int>(cands.size());
  if (upper && *upper < cap) cap = *upper;

  for (Int c = 0; c <= cap; ++c) {
    detail::SizeOutcome so = detail::search_size(n, k, c, cands, lengths, maps, cfg, deadline);
    res.subsets_tested += so.tested;
    if (so.best) {
      res.value = c;
      res.exact = true;
      res.chord_set = std::move(*so.best);
      return finish(res);
    }
    if (so.incomplete) {
      if (upper && *upper == c) {
        // every smaller size was exhausted, and the hint has this size
        res.value = c;
        res.exact = true;
        res.chord_set = upper_set;
      } else {
        res.value = c;  // sizes < c are fully refuted
      }
      return finish(res);
    }
  }
  if (cap == static_cast<Int>(cands.size()))
    throw std::logic_error("exhausted the full chord supply without reproducing the root check");
  res.value = cap + 1;  // every size <= cap refuted under the caller's budget
  return finish(res);
}

// Seeded, reproducible draws from [lo, hi]. The generator sequence is
// pinned by the standard, so identical seeds give identical samples on
// every platform.
inline std::vector<Vertex> sample_lengths(Vertex lo, Vertex hi, Int count, std::uint64_t seed) {
  if (hi < lo) throw std::invalid_argument("sample_lengths: empty range");
  if (count < 0) throw std::invalid_argument("sample_lengths: negative count");
  std::mt19937_64 rng(seed);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(count));
  while (out.size() < static_cast<std::size_t>(count)) {
    std::uint64_t u = rng();
    if (u >= limit) continue;  // rejection keeps the draw unbiased
    out.push_back(lo + static_cast<Vertex>(u % span));
  }
  return out;
}

}  // namespace chordspan
