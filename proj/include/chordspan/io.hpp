#pragma once

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chordspan/bounds.hpp"
#include "chordspan/chorded_cycle.hpp"
#include "chordspan/construction.hpp"
#include "chordspan/oracle.hpp"

namespace chordspan {

using Json = nlohmann::ordered_json;

inline Json edges_to_json(std::span<const Edge> edges) {
  Json arr = Json::array();
  for (const Edge& e : edges) arr.push_back(Json::array({e.a, e.b}));
  return arr;
}

inline std::vector<Edge> edges_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("chord list must be an array of [a,b] pairs");
  std::vector<Edge> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
      throw std::invalid_argument("each chord must be a pair of integers");
    out.push_back(make_edge(item[0].get<Vertex>(), item[1].get<Vertex>()));
  }
  return out;
}

inline Json to_json(const ChordedCycle& g) {
  Json j;
  j["n"] = g.n();
  j["chords"] = edges_to_json(g.chords());
  return j;
}

// Accepts the canonical graph document {"n", "chords"} and, for
// convenience, the construction document ("plan_chords" + "tail_chords").
inline ChordedCycle cycle_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("graph JSON needs an integer field \"n\"");
  if (j.contains("chords")) return ChordedCycle(j["n"].get<Vertex>(), edges_from_json(j["chords"]));
  if (j.contains("plan_chords")) {
    std::vector<Edge> chords = edges_from_json(j["plan_chords"]);
    if (j.contains("tail_chords")) {
      std::vector<Edge> tail = edges_from_json(j["tail_chords"]);
      chords.insert(chords.end(), tail.begin(), tail.end());
    }
    return ChordedCycle(j["n"].get<Vertex>(), std::move(chords));
  }
  throw std::invalid_argument("graph JSON needs a \"chords\" (or \"plan_chords\") field");
}

inline Json to_json(const WitnessCycle& w) {
  Json j;
  j["length"] = w.length();
  j["vertices"] = w.vertices;
  j["chord_edges"] = edges_to_json(w.chord_edges);
  return j;
}

inline Json to_json(const FullConstruction& f) {
  Json j;
  j["n"] = f.plan.n;
  j["k"] = f.plan.k;
  j["b"] = f.plan.b;
  j["alpha"] = f.plan.alpha;
  j["m"] = f.plan.m;
  j["plan_chords"] = edges_to_json(f.plan.chords);
  j["tail_chords"] = edges_to_json(f.tail_chords);
  j["chord_count"] = f.chord_count();
  return j;
}

inline Json to_json(const PropertyReport& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["range"] = Json::array({r.range_lo, r.range_hi});
  j["chord_count"] = r.chord_count;
  j["satisfied"] = r.satisfied();
  Json arr = Json::array();
  for (const LengthStatus& st : r.statuses) {
    Json e;
    e["l"] = st.l;
    e["state"] = to_string(st.state);
    if (st.witness_failed) e["witness_failed"] = true;
    if (!st.detail.empty()) e["detail"] = st.detail;
    arr.push_back(std::move(e));
  }
  j["lengths"] = std::move(arr);
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline void dot_ring(std::ostringstream& os, Vertex n) {
  os << "  node [shape=circle, fontsize=9];\n";
  os << "  edge [color=gray60];\n";
  for (Vertex v = 1; v < n; ++v) os << "  " << v << " -- " << v + 1 << ";\n";
  os << "  " << n << " -- 1;\n";
}

inline void dot_chords(std::ostringstream& os, std::span<const Edge> chords, const char* prefix,
                       const char* color) {
  std::size_t i = 0;
  for (const Edge& e : chords)
    os << "  " << e.a << " -- " << e.b << " [color=" << color << ", label=\"" << prefix << ++i << "\"];\n";
}

}  // namespace detail

// Host edges as a ring, chords as labeled arcs.
inline std::string to_dot(const ChordedCycle& g) {
  std::ostringstream os;
  os << "graph chordspan {\n  layout=circo;\n";
  detail::dot_ring(os, g.n());
  detail::dot_chords(os, g.chords(), "c", "steelblue");
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const FullConstruction& f) {
  std::ostringstream os;
  os << "graph chordspan {\n  layout=circo;\n";
  detail::dot_ring(os, f.plan.n);
  detail::dot_chords(os, f.plan.chords, "p", "steelblue");
  detail::dot_chords(os, f.tail_chords, "t", "firebrick");
  os << "}\n";
  return os.str();
}

inline std::string format_seconds(std::int64_t ms) {
  std::string frac = std::to_string(ms % 1000);
  return std::to_string(ms / 1000) + "." + std::string(3 - frac.size(), '0') + frac;
}

inline std::string search_csv(std::span<const BruteForceResult> rows) {
  std::string out = "n,k,c,status,seconds\n";
  for (const BruteForceResult& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.value) + "," +
           (r.exact ? "exact" : "inconclusive") + "," + format_seconds(r.elapsed_ms) + "\n";
  }
  return out;
}

inline std::string bounds_csv(std::span<const BoundsRow> rows) {
  std::string out = "n,k,log_lower,counting_lower,theorem2_upper,constructed,exact,ratio,ok\n";
  for (const BoundsRow& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.log_lo) + "," +
           std::to_string(r.counting_lo) + ",";
    out += (r.upper ? std::to_string(*r.upper) : "") + std::string(",");
    out += (r.constructed ? std::to_string(*r.constructed) : "") + std::string(",");
    out += (r.exact ? std::to_string(*r.exact) : "") + std::string(",");
    out += r.ratio + ",";
    if (r.ok()) {
      out += "ok";
    } else {
      out += "flagged(";
      for (std::size_t i = 0; i < r.flags.size(); ++i) out += (i ? "; " : "") + r.flags[i];
      out += ")";
    }
    out += "\n";
  }
  return out;
}

inline Json bounds_json(std::span<const BoundsRow> rows) {
  Json arr = Json::array();
  for (const BoundsRow& r : rows) {
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["log_lower"] = r.log_lo;
    j["counting_lower"] = r.counting_lo;
    if (r.upper) j["theorem2_upper"] = *r.upper;
    if (r.constructed) j["constructed"] = *r.constructed;
    if (r.exact) j["exact"] = *r.exact;
    if (!r.ratio.empty()) j["ratio"] = r.ratio;
    j["ok"] = r.ok();
    if (!r.ok()) j["flags"] = r.flags;
    arr.push_back(std::move(j));
  }
  return arr;
}

// Plain edge list: a header line "n=<int>", then one "a b" pair per line.
// Listed host edges are accepted and ignored; every other pair becomes a
// chord. '#' starts a comment.
inline ChordedCycle parse_edge_list(std::istream& in) {
  std::string line;
  Vertex n = 0;
  bool have_n = false;
  std::vector<Edge> chords;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!have_n) {
      std::string tok;
      if (!(ls >> tok)) continue;  // blank
      if (tok.rfind("n=", 0) != 0)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected header n=<int>");
      n = std::stoll(tok.substr(2));
      have_n = true;
      continue;
    }
    std::string a_tok, b_tok, extra;
    if (!(ls >> a_tok)) continue;  // blank
    if (!(ls >> b_tok) || (ls >> extra))
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected two vertices");
    std::size_t pos_a = 0, pos_b = 0;
    Vertex a = std::stoll(a_tok, &pos_a);
    Vertex b = std::stoll(b_tok, &pos_b);
    if (pos_a != a_tok.size() || pos_b != b_tok.size())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected two vertices");
    if (a < 1 || a > n || b < 1 || b > n)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": vertex out of range 1.." +
                                  std::to_string(n));
    Edge e = make_edge(a, b);
    const bool host = (e.b - e.a == 1) || (e.a == 1 && e.b == n);
    if (!host) chords.push_back(e);
  }
  if (!have_n) throw std::invalid_argument("edge list is missing the n=<int> header");
  return ChordedCycle(n, std::move(chords));
}

// Accepts either the canonical JSON encoding or a plain edge list.
inline ChordedCycle load_graph(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return cycle_from_json(nlohmann::json::parse(text));
  std::istringstream stream(text);
  return parse_edge_list(stream);
}

}  // namespace chordspan
