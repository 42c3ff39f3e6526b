#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include <chordspan/chorded_cycle.hpp>
#include <chordspan/construction.hpp>

using namespace chordspan;

namespace {

// Independent oracle: materialize the union of the blocks G_b(q(e), e),
// e = 0..k-1, and count vertices/edges/chords explicitly.
struct UnionCounts {
  Int vertices = 0;
  Int edges = 0;
  Int chords = 0;
};

UnionCounts enumerate_chain(Int b, Int k) {
  auto power = [](Int base, Int exp) {
    Int p = 1;
    for (Int i = 0; i < exp; ++i) p *= base;
    return p;
  };
  std::set<Vertex> vs;
  std::set<Edge> es, cs;
  for (Int e = 0; e < k; ++e) {
    Vertex i = power(b, e) + 2 * e;  // q(e)
    Vertex hi = i + 2 + power(b, e + 1) - power(b, e);
    for (Vertex v = i; v <= hi; ++v) vs.insert(v);
    for (Vertex v = i; v < hi; ++v) es.insert({v, v + 1});
    for (Int j = 0; j < b; ++j) {
      Edge c{i, i + 2 + j * power(b, e)};
      es.insert(c);
      cs.insert(c);
    }
  }
  return {static_cast<Int>(vs.size()), static_cast<Int>(es.size()), static_cast<Int>(cs.size())};
}

// Chord edges of an ascending path are exactly its steps of size >= 2.
std::vector<Edge> path_jump_edges(const std::vector<Vertex>& path) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    REQUIRE(path[i + 1] > path[i]);
    if (path[i + 1] - path[i] >= 2) out.push_back({path[i], path[i + 1]});
  }
  return out;
}

Int count_jumps(const std::vector<Vertex>& path) {
  return static_cast<Int>(path_jump_edges(path).size());
}

}  // namespace

TEST_CASE("q_value") {
  REQUIRE(q_value(4, 3) == 70);
  REQUIRE(q_value(4, 0) == 1);
  REQUIRE(q_value(4, 2) == 20);
  REQUIRE_THROWS_AS(q_value(2, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(q_value(10, 40), std::overflow_error);
}

TEST_CASE("make_block reproduces the fanned base chords") {
  Block g41 = make_block(4, 6, 1);
  REQUIRE(g41.base_chords() == std::vector<Edge>{{6, 8}, {6, 12}, {6, 16}, {6, 20}});
  Block g40 = make_block(4, 1, 0);
  REQUIRE(g40.base_chords() == std::vector<Edge>{{1, 3}, {1, 4}, {1, 5}, {1, 6}});
  Block g42 = make_block(4, 20, 2);
  REQUIRE(g42.base_chords() == std::vector<Edge>{{20, 22}, {20, 38}, {20, 54}, {20, 70}});

  for (Int b : {3, 4, 7}) {
    for (Int e : {0, 1, 2}) {
      Block blk = make_block(b, 5, e);
      REQUIRE(static_cast<Int>(blk.base_chords().size()) == b);
      REQUIRE(blk.outer_edge_count() == checked_pow(b, e + 1) - checked_pow(b, e) + 2);
      for (const Edge& c : blk.base_chords()) REQUIRE(c.a == 5);  // all chords share the base point
    }
  }
}

TEST_CASE("block_path has one chord followed by c*b^e outer edges") {
  REQUIRE(block_path(4, 1, 1) == std::vector<Vertex>{6, 16, 17, 18, 19, 20});

  std::vector<Vertex> long_path = block_path(4, 2, 3);
  REQUIRE(long_path.front() == 20);
  REQUIRE(long_path[1] == 22);  // base chord {20, 22}
  REQUIRE(long_path.back() == 70);
  REQUIRE(static_cast<Int>(long_path.size()) - 1 == 49);  // 1 + 3*4^2

  REQUIRE(block_path(5, 2, 0) == std::vector<Vertex>{q_value(5, 2), q_value(5, 3)});
  REQUIRE_THROWS_AS(block_path(4, 1, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(block_path(4, 1, -1), std::invalid_argument);

  for (Int b : {3, 5}) {
    for (Int e : {0, 1, 2}) {
      for (Int c = 0; c < b; ++c) {
        std::vector<Vertex> p = block_path(b, e, c);
        REQUIRE(p.front() == q_value(b, e));
        REQUIRE(p.back() == q_value(b, e + 1));
        REQUIRE(static_cast<Int>(p.size()) - 1 == 1 + c * checked_pow(b, e));
        REQUIRE(count_jumps(p) == 1);
      }
    }
  }
}

TEST_CASE("build_H counts match the closed forms and an explicit union") {
  BlockChain h44 = build_H(4, 4);
  REQUIRE(h44.vertex_count() == 264);
  REQUIRE(h44.edge_count() == 279);
  REQUIRE(h44.chord_count() == 16);

  BlockChain h43 = build_H(4, 3);
  REQUIRE(h43.chords == std::vector<Edge>{{1, 3},
                                          {1, 4},
                                          {1, 5},
                                          {1, 6},
                                          {6, 8},
                                          {6, 12},
                                          {6, 16},
                                          {6, 20},
                                          {20, 22},
                                          {20, 38},
                                          {20, 54},
                                          {20, 70}});

  BlockChain h32 = build_H(3, 2);
  REQUIRE(h32.vertex_count() == 13);
  REQUIRE(h32.edge_count() == 18);

  for (Int b : {3, 4, 5, 6}) {
    for (Int k : {2, 3, 4}) {
      BlockChain h = build_H(b, k);
      UnionCounts u = enumerate_chain(b, k);
      REQUIRE(h.vertex_count() == u.vertices);
      REQUIRE(h.edge_count() == u.edges);
      REQUIRE(h.chord_count() == u.chords);
      REQUIRE(u.vertices == checked_pow(b, k) + 2 * k);
      REQUIRE(u.edges == checked_pow(b, k) + 2 * k - 1 + b * k);
      REQUIRE(u.chords == b * k);
    }
  }
}

TEST_CASE("digit decomposition round-trips and rejects out-of-range values") {
  DigitVector d = DigitVector::decompose(49, 4, 3);
  REQUIRE(d.digits == std::vector<Int>{1, 0, 3});
  REQUIRE(d.value() == 49);
  REQUIRE_THROWS_AS(DigitVector::decompose(64, 4, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(DigitVector::decompose(-1, 4, 3), std::invalid_argument);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    Int base = 3 + static_cast<Int>(rng() % 10);
    Int count = 1 + static_cast<Int>(rng() % 5);
    Int value = static_cast<Int>(rng() % static_cast<std::uint64_t>(checked_pow(base, count)));
    DigitVector dv = DigitVector::decompose(value, base, count);
    REQUIRE(dv.value() == value);
    REQUIRE(static_cast<Int>(dv.digits.size()) == count);
  }
}

TEST_CASE("build_F reproduces the worked k=2 plans") {
  ConstructionPlan p16 = build_F(16, 2);
  REQUIRE(p16.b == 4);
  REQUIRE(p16.m == 6);
  REQUIRE(p16.alpha == 2);
  REQUIRE(p16.chords == std::vector<Edge>{{1, 3}, {1, 4}, {1, 5}, {1, 6}, {6, 8}, {6, 12}, {6, 16}});
  // {1, n} stays a host edge, never a chord
  REQUIRE_FALSE(p16.graph().is_chord(1, 16));
  REQUIRE(p16.graph().is_host_edge(1, 16));

  ConstructionPlan p256 = build_F(256, 2);
  REQUIRE(p256.b == 16);
  REQUIRE(p256.m == 18);
  REQUIRE(p256.alpha == 14);
  // 16 chords fan out of vertex 1 (including {1, 18} = {1, m}, counted
  // once), 15 survive in the truncated top block
  REQUIRE(p256.chord_count() == 31);
  Int from_one = 0, from_m = 0;
  for (const Edge& c : p256.chords) {
    if (c.a == 1) ++from_one;
    if (c.a == 18) ++from_m;
  }
  REQUIRE(from_one == 16);
  REQUIRE(from_m == 15);
  REQUIRE(p256.graph().is_chord(1, 18));

  REQUIRE_THROWS_AS(build_F(15, 2), std::domain_error);
  REQUIRE_THROWS_WITH(build_F(15, 2), Catch::Matchers::ContainsSubstring("(k+2)^k = 16"));
}

TEST_CASE("compute_alpha pins the truncation interval") {
  REQUIRE(compute_alpha(16, 2, 4, 6) == 2);
  REQUIRE(compute_alpha(256, 2, 16, 18) == 14);
  REQUIRE(compute_alpha(8, 2, 4, 6) == 0);  // n = m + 2 boundary
}

TEST_CASE("path_P decodes digit vectors into block paths") {
  ConstructionPlan plan = build_F(1296, 4);  // b = 6 exactly
  REQUIRE(plan.b == 6);
  for (Int value : {0, 1, 17, 63, 124, 215}) {
    DigitVector digits = DigitVector::decompose(value, plan.b, plan.k - 1);
    std::vector<Vertex> p = path_P(plan, digits);
    REQUIRE(p.front() == 1);
    REQUIRE(p.back() == plan.m);
    REQUIRE(static_cast<Int>(p.size()) - 1 == plan.k - 1 + value);
    REQUIRE(count_jumps(p) == plan.k - 1);
  }
  // all-zero digits: the all-chord path along the joints
  std::vector<Vertex> joints = path_P(plan, DigitVector::decompose(0, plan.b, plan.k - 1));
  REQUIRE(joints == std::vector<Vertex>{plan.q[0], plan.q[1], plan.q[2], plan.q[3]});
  // all-(b-1) digits: length k-1 + b^{k-1} - 1
  DigitVector top = DigitVector::decompose(checked_pow(plan.b, plan.k - 1) - 1, plan.b, plan.k - 1);
  REQUIRE(static_cast<Int>(path_P(plan, top).size()) - 1 ==
          plan.k - 1 + checked_pow(plan.b, plan.k - 1) - 1);
}

TEST_CASE("the base-4 chain worked example, with the digit arithmetic done exactly") {
  // Digits are the little-endian coefficients of l - (k-1) in base b. In
  // H_4(4): 52 - 3 = 49 = 1*4^0 + 0*4^1 + 3*4^2, so the length-52 path
  // from 1 to 70 with three chords runs through {1,5}, {6,20}, {20,22}.
  BlockChain h = build_H(4, 4);
  auto chain = [&](const std::vector<Int>& digits) {
    std::vector<Vertex> path{1};
    for (Int e = 0; e < 3; ++e) {
      std::vector<Vertex> seg = block_path(4, e, digits[static_cast<std::size_t>(e)]);
      REQUIRE(seg.front() == path.back());
      path.insert(path.end(), seg.begin() + 1, seg.end());
    }
    return path;
  };
  std::vector<Vertex> p52 = chain({1, 0, 3});
  REQUIRE(p52.front() == 1);
  REQUIRE(p52.back() == 70);
  REQUIRE(static_cast<Int>(p52.size()) - 1 == 52);
  REQUIRE(path_jump_edges(p52) == std::vector<Edge>{{1, 5}, {6, 20}, {20, 22}});
  for (const Edge& e : path_jump_edges(p52))
    REQUIRE(std::binary_search(h.chords.begin(), h.chords.end(), e));
  // digits (1,1,3) pick {1,5}, {6,16}, {20,22} and give length 3 + 53 = 56
  std::vector<Vertex> p56 = chain({1, 1, 3});
  REQUIRE(static_cast<Int>(p56.size()) - 1 == 56);
  REQUIRE(path_jump_edges(p56) == std::vector<Edge>{{1, 5}, {6, 16}, {20, 22}});
}

TEST_CASE("path_Q runs through one surviving base chord and the host tail") {
  ConstructionPlan p16 = build_F(16, 2);
  REQUIRE(path_Q(p16, 1) == std::vector<Vertex>{6, 12, 13, 14, 15, 16, 1});
  REQUIRE(path_Q(p16, 2) == std::vector<Vertex>{6, 16, 1});
  REQUIRE_THROWS_AS(path_Q(p16, 3), std::invalid_argument);

  ConstructionPlan p256 = build_F(256, 2);
  for (Int j = 0; j <= p256.alpha; ++j) {
    std::vector<Vertex> q = path_Q(p256, j);
    REQUIRE(static_cast<Int>(q.size()) - 1 ==
            p256.n + 2 - (j + 1) * p256.top_stride() - 2 * p256.k);
  }
  REQUIRE(static_cast<Int>(path_Q(p256, 0).size()) - 1 == 238);
}

TEST_CASE("decode_length realizes the stated witnesses") {
  ConstructionPlan p16 = build_F(16, 2);

  LengthWitness w10 = decode_length(p16, 10);
  REQUIRE(w10.source == WitnessSource::kL2);
  REQUIRE(w10.cycle.vertices == std::vector<Vertex>{1, 3, 4, 5, 6, 12, 13, 14, 15, 16});
  REQUIRE(w10.cycle.chord_edges == std::vector<Edge>{{1, 3}, {6, 12}});

  LengthWitness w3 = decode_length(p16, 3);
  REQUIRE(w3.source == WitnessSource::kL1);
  REQUIRE(w3.cycle.vertices == std::vector<Vertex>{1, 5, 6});
  REQUIRE(w3.cycle.chord_edges == std::vector<Edge>{{1, 5}, {1, 6}});

  ConstructionPlan p125 = build_F(125, 3);
  LengthWitness wk = decode_length(p125, 3);
  REQUIRE(wk.cycle.vertices == std::vector<Vertex>{1, p125.q[1], p125.q[2]});
  REQUIRE(static_cast<Int>(wk.cycle.chord_edges.size()) == 3);  // every edge is a chord

  REQUIRE_THROWS_AS(decode_length(p16, 2), std::invalid_argument);
  REQUIRE_THROWS_WITH(decode_length(p16, 2),
                      Catch::Matchers::ContainsSubstring("simple-graph convention"));
  REQUIRE_THROWS_AS(decode_length(p16, 15), std::out_of_range);  // tail territory
  REQUIRE_THROWS_AS(decode_length(p16, 17), std::out_of_range);
}

TEST_CASE("decode_length is deterministic and validated end to end") {
  ConstructionPlan plan = build_F(300, 3);
  ChordedCycle g = plan.graph();
  for (Vertex l = plan.min_length(); l <= plan.n - plan.k; ++l) {
    LengthWitness w = decode_length(plan, l);
    WitnessReport rep = validate_witness(g, w.cycle.vertices, plan.k);
    INFO("l=" << l << " " << rep.describe());
    REQUIRE(rep.pass());
    REQUIRE(rep.length == l);
    LengthWitness again = decode_length(plan, l);
    REQUIRE(again.cycle.vertices == w.cycle.vertices);
  }
}

TEST_CASE("tail gadgets burn exactly k chords and shorten as labeled") {
  FullConstruction f16 = construct(16, 2);
  REQUIRE(f16.tail_chords == std::vector<Edge>{{2, 4}, {2, 5}});
  REQUIRE(f16.chord_count() == 9);

  LengthWitness w16 = tail_witness(f16, 16);
  REQUIRE(w16.cycle.vertices ==
          std::vector<Vertex>{1, 3, 2, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  REQUIRE(w16.cycle.chord_edges == std::vector<Edge>{{1, 3}, {2, 4}});

  LengthWitness w15 = tail_witness(f16, 15);
  REQUIRE(w15.cycle.vertices ==
          std::vector<Vertex>{1, 3, 2, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  REQUIRE(w15.cycle.chord_edges == std::vector<Edge>{{1, 3}, {2, 5}});

  REQUIRE_THROWS_AS(tail_witness(f16, 14), std::out_of_range);
  REQUIRE_THROWS_AS(tail_witness(f16, 17), std::out_of_range);

  // k = 3: triple for the full length, skip + cross for the shortened ones
  FullConstruction f125 = construct(125, 3);
  LengthWitness t125 = tail_witness(f125, 125);
  REQUIRE(static_cast<Int>(t125.cycle.chord_edges.size()) == 3);
  REQUIRE(t125.cycle.length() == 125);
  for (Vertex l = 123; l <= 125; ++l) {
    WitnessReport rep = validate_witness(f125.graph(), tail_witness(f125, l).cycle.vertices, 3);
    REQUIRE(rep.pass());
  }
  REQUIRE(static_cast<Int>(f125.tail_chords.size()) <= 9);
}

TEST_CASE("construct covers the whole required range") {
  FullConstruction full = construct(16, 2);
  ChordedCycle g = full.graph();
  for (Vertex l = 3; l <= 16; ++l) {
    WitnessReport rep = validate_witness(g, full.witness(l).cycle.vertices, 2);
    INFO("l=" << l << " " << rep.describe());
    REQUIRE(rep.pass());
  }
  REQUIRE(full.warnings.empty());
  REQUIRE_THROWS_AS(full.witness(2), std::invalid_argument);

  // smallest legal instance for k = 3 sits exactly at b = k + 2
  FullConstruction boundary = construct(125, 3);
  REQUIRE(boundary.plan.b == 5);
  ChordedCycle bg = boundary.graph();
  for (Vertex l = 3; l <= 125; ++l)
    REQUIRE(validate_witness(bg, boundary.witness(l).cycle.vertices, 3).pass());

  FullConstruction f256 = construct(256, 2);
  REQUIRE(f256.chord_count() <= 2 * 16 + 4 + 1);
  ChordedCycle g256 = f256.graph();
  for (Vertex l = 3; l <= 256; ++l)
    REQUIRE(validate_witness(g256, f256.witness(l).cycle.vertices, 2).pass());
}

TEST_CASE("k=5 splices several gadgets per tail length") {
  FullConstruction full = construct(16807, 5);  // smallest legal n for k = 5
  REQUIRE(full.plan.b == 7);
  ChordedCycle g = full.graph();
  std::vector<Vertex> lengths{5, 6, 7, 100, 2401, 16802};
  for (Vertex l = 16803; l <= 16807; ++l) lengths.push_back(l);  // one per gadget recipe
  for (Vertex l : lengths) {
    LengthWitness w = full.witness(l);
    WitnessReport rep = validate_witness(g, w.cycle.vertices, 5);
    INFO("l=" << l << " " << rep.describe());
    REQUIRE(rep.pass());
    REQUIRE(rep.length == l);
  }
  REQUIRE(static_cast<Int>(full.tail_chords.size()) <= 25);
}

TEST_CASE("construction is pure: repeated runs give identical chord sets") {
  FullConstruction a = construct(1296, 4);
  FullConstruction b = construct(1296, 4);
  REQUIRE(a.chords == b.chords);
  REQUIRE(a.witness(777).cycle.vertices == b.witness(777).cycle.vertices);
}
