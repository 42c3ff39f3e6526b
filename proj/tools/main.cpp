#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <chordspan/chordspan.hpp>

namespace {

using namespace chordspan;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

int write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return kExitPass;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << path << "\n";
    return kExitUsage;
  }
  out << content;
  return kExitPass;
}

// "16", "16,256", "6..10" and mixtures thereof.
std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    std::string tok = text.substr(i, j - i);
    if (!tok.empty()) {
      std::size_t dots = tok.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoll(tok));
      } else {
        Int lo = std::stoll(tok.substr(0, dots));
        Int hi = std::stoll(tok.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("empty range " + tok);
        for (Int v = lo; v <= hi; ++v) out.push_back(v);
      }
    }
    i = j + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::string edges_line(std::span<const Edge> edges) {
  std::string s;
  for (const Edge& e : edges) {
    if (!s.empty()) s += " ";
    s += edge_str(e);
  }
  return s;
}

int run_construct(Int n, Int k, const std::string& format, const std::string& out) {
  FullConstruction full = construct(n, k);
  for (const std::string& w : full.warnings) std::cerr << "warning: " << w << "\n";
  if (format == "json") return write_output(out, render_json(to_json(full)));
  if (format == "dot") return write_output(out, to_dot(full));
  std::ostringstream os;
  os << "n=" << full.plan.n << " k=" << full.plan.k << " b=" << full.plan.b << " m=" << full.plan.m
     << " alpha=" << full.plan.alpha << "\n";
  os << "plan chords (" << full.plan.chord_count() << "): " << edges_line(full.plan.chords) << "\n";
  os << "tail chords (" << full.tail_chords.size() << "): " << edges_line(full.tail_chords) << "\n";
  os << "total chords: " << full.chord_count()
     << " (budget k*ceil(n^(1/k))+k^2 = " << theorem2_upper(n, k) << ")\n";
  return write_output(out, os.str());
}

int run_decode(Int n, Int k, Int l, const std::string& format, const std::string& out) {
  FullConstruction full = construct(n, k);
  LengthWitness w = full.witness(l);
  if (format == "json") return write_output(out, render_json(to_json(w.cycle)));
  std::ostringstream os;
  os << "length " << w.cycle.length() << " witness (" << w.detail << ")\n";
  os << "vertices:";
  for (Vertex v : w.cycle.vertices) os << " " << v;
  os << "\nchord edges: " << edges_line(w.cycle.chord_edges) << "\n";
  return write_output(out, os.str());
}

int run_verify(const std::string& input, Int k, const std::string& lengths_spec, bool oracle_only,
               std::uint64_t seed, Int all_limit, const SearchConfig& cfg, const std::string& format,
               const std::string& out) {
  std::optional<ChordedCycle> g;
  if (input == "-") {
    g = load_graph(std::cin);
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open input file " << input << "\n";
      return kExitUsage;
    }
    g = load_graph(in);
  }
  auto [lo, hi] = required_range(g->n(), k);
  std::vector<Vertex> lengths;
  if (lengths_spec == "all") {
    if (g->n() > all_limit) {
      std::cerr << "error: --lengths all refused for n = " << g->n() << " > " << all_limit
                << "; use --lengths sample:<count> or raise --all-limit\n";
      return kExitUsage;
    }
    for (Vertex l = lo; l <= hi; ++l) lengths.push_back(l);
  } else if (lengths_spec.rfind("sample:", 0) == 0) {
    lengths = sample_lengths(lo, hi, std::stoll(lengths_spec.substr(7)), seed);
  } else {
    for (Int l : parse_int_list(lengths_spec)) {
      if (l < lo || l > hi) {
        std::cerr << "error: length " << l << " outside required range " << lo << ".." << hi;
        if (l == 2 && k == 2) std::cerr << " (l=2 excluded by simple-graph convention)";
        std::cerr << "\n";
        return kExitUsage;
      }
      lengths.push_back(l);
    }
  }
  WitnessFn witness_fn;
  std::optional<FullConstruction> full;
  if (!oracle_only) {
    try {
      full = construct(g->n(), k);
      const FullConstruction* fc = &*full;
      witness_fn = [fc](Vertex l) -> std::optional<std::vector<Vertex>> {
        try {
          return fc->witness(l).cycle.vertices;
        } catch (const std::exception&) {
          return std::nullopt;
        }
      };
    } catch (const std::domain_error& e) {
      std::cerr << "note: no constructed witnesses (" << e.what() << "); oracle only\n";
    }
  }
  PropertyReport rep = verify_property(*g, k, lengths, witness_fn, cfg);
  int code = rep.satisfied() ? kExitPass
                             : (rep.has(LengthState::kInconclusive) ? kExitInconclusive : kExitFail);
  if (format == "json") {
    int wcode = write_output(out, render_json(to_json(rep)));
    return wcode != kExitPass ? wcode : code;
  }
  std::ostringstream os;
  os << "n=" << rep.n << " k=" << rep.k << " chords=" << rep.chord_count << " range=" << rep.range_lo
     << ".." << rep.range_hi << "\n";
  for (const LengthStatus& st : rep.statuses) {
    os << "  l=" << st.l << " " << to_string(st.state);
    if (st.state == LengthState::kWitnessPass && full) os << " (" << full->witness(st.l).detail << ")";
    if (st.witness_failed) os << " [witness failed: " << st.detail << "]";
    os << "\n";
  }
  os << "satisfied: " << (rep.satisfied() ? "yes" : "no") << " (" << rep.statuses.size()
     << " lengths checked)\n";
  if (!rep.note.empty()) os << "note: " << rep.note << "\n";
  int wcode = write_output(out, os.str());
  return wcode != kExitPass ? wcode : code;
}

int run_search(const std::vector<Int>& ns, Int k, bool hint_construction, const SearchConfig& cfg_in,
               const std::string& format, const std::string& out) {
  std::vector<BruteForceResult> results;
  for (Int n : ns) {
    SearchConfig cfg = cfg_in;
    if (hint_construction) {
      try {
        cfg.hint = construct(n, k).chords;
      } catch (const std::domain_error&) {
        // n below the construction threshold; search without a hint
      }
    }
    results.push_back(brute_force_c(n, k, cfg));
  }
  bool all_exact = true;
  for (const BruteForceResult& r : results) all_exact = all_exact && r.exact;
  int code = all_exact ? kExitPass : kExitInconclusive;
  std::string text;
  if (format == "csv") {
    text = search_csv(results);
  } else {
    std::ostringstream os;
    for (const BruteForceResult& r : results) {
      os << "n=" << r.n << " k=" << r.k << " c=" << r.value
         << (r.exact ? " (exact" : " (lower bound, inconclusive") << ", " << r.subsets_tested
         << " subsets, " << format_seconds(r.elapsed_ms) << " s)";
      if (r.exact) os << " chords: " << edges_line(r.chord_set);
      os << "\n";
    }
    text = os.str();
  }
  int wcode = write_output(out, text);
  return wcode != kExitPass ? wcode : code;
}

int run_bounds(const std::vector<Int>& ns, Int k, bool exact, const SearchConfig& cfg,
               const std::string& format, const std::string& out) {
  std::vector<BoundsQuery> queries;
  for (Int n : ns) {
    BoundsQuery q;
    q.n = n;
    q.k = k;
    if (exact) {
      BruteForceResult r = brute_force_c(n, k, cfg);
      if (r.exact) q.exact = r.value;
    }
    queries.push_back(q);
  }
  std::vector<BoundsRow> rows = bounds_table(queries);
  bool all_ok = true;
  for (const BoundsRow& r : rows) all_ok = all_ok && r.ok();
  int code = all_ok ? kExitPass : kExitFail;
  std::string text = format == "json" ? render_json(bounds_json(rows)) : bounds_csv(rows);
  int wcode = write_output(out, text);
  return wcode != kExitPass ? wcode : code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chordspan: minimal chord sets realizing every cycle length with a fixed chord count"};
  app.require_subcommand(1);

  Int n = 0, k = 0, l = 0;
  std::string out, input, lengths_spec = "all", n_list;
  std::string fmt_construct = "json", fmt_decode = "json", fmt_verify = "json", fmt_search = "csv",
              fmt_bounds = "csv";
  std::uint64_t seed = 0;
  Int all_limit = 20000;
  bool oracle_only = false, no_symmetry = false, no_prune = false, hint_construction = false,
       exact = false;
  SearchConfig cfg;

  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--time-limit-ms", cfg.time_limit_ms, "soft time limit in milliseconds (0 = none)")
        ->envname("CHORDSPAN_TIME_LIMIT_MS");
    sub->add_option("--workers", cfg.workers, "worker threads (default 1, reproducible timing)")
        ->envname("CHORDSPAN_WORKERS");
  };

  CLI::App* c_construct = app.add_subcommand("construct", "build the chord set for (n, k)");
  c_construct->add_option("-n", n, "host cycle length")->required();
  c_construct->add_option("-k", k, "chord count per cycle")->required();
  c_construct->add_option("--format", fmt_construct, "json | dot | human")
      ->check(CLI::IsMember({"json", "dot", "human"}));
  c_construct->add_option("-o,--output", out, "output file (default stdout)");

  CLI::App* c_decode = app.add_subcommand("decode", "emit the witness cycle for one length");
  c_decode->add_option("-n", n, "host cycle length")->required();
  c_decode->add_option("-k", k, "chord count per cycle")->required();
  c_decode->add_option("-l", l, "target cycle length")->required();
  c_decode->add_option("--format", fmt_decode, "json | human")
      ->check(CLI::IsMember({"json", "human"}));
  c_decode->add_option("-o,--output", out, "output file (default stdout)");

  CLI::App* c_verify = app.add_subcommand("verify", "check a chorded cycle against the length property");
  c_verify->add_option("-i,--input", input, "graph file (JSON or edge list; '-' for stdin)")->required();
  c_verify->add_option("-k", k, "chord count per cycle")->required();
  c_verify->add_option("--lengths", lengths_spec, "all | sample:<count> | explicit list (e.g. 3,10..16)");
  c_verify->add_flag("--oracle-only", oracle_only, "ignore constructed witnesses, search every length");
  c_verify->add_option("--seed", seed, "seed for sampled lengths");
  c_verify->add_option("--all-limit", all_limit, "largest n for which --lengths all is allowed")
      ->envname("CHORDSPAN_ALL_LIMIT");
  c_verify->add_option("--format", fmt_verify, "json | human")
      ->check(CLI::IsMember({"json", "human"}));
  c_verify->add_option("-o,--output", out, "output file (default stdout)");
  add_limits(c_verify);

  CLI::App* c_search = app.add_subcommand("search", "exact minimum chord count by exhaustive search");
  c_search->add_option("-n", n_list, "cycle lengths, e.g. 6 or 6..10 or 6,8,10")->required();
  c_search->add_option("-k", k, "chord count per cycle")->required();
  c_search->add_flag("--no-symmetry", no_symmetry, "disable dihedral symmetry reduction");
  c_search->add_flag("--no-prune", no_prune, "disable reachability pruning");
  c_search->add_flag("--hint-construction", hint_construction,
                     "use the constructed chord set as an upper bound");
  c_search->add_option("--max-chords", cfg.max_chords, "largest subset size to try (-1 = unlimited)");
  c_search->add_option("--format", fmt_search, "csv | human")
      ->check(CLI::IsMember({"csv", "human"}));
  c_search->add_option("-o,--output", out, "output file (default stdout)");
  add_limits(c_search);

  CLI::App* c_bounds = app.add_subcommand("bounds", "lower/upper bound table for a list of instances");
  c_bounds->add_option("-n", n_list, "cycle lengths, e.g. 16,256,65536")->required();
  c_bounds->add_option("-k", k, "chord count per cycle")->required();
  c_bounds->add_flag("--exact", exact, "also run the exhaustive search per instance");
  c_bounds->add_option("--format", fmt_bounds, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  c_bounds->add_option("-o,--output", out, "output file (default stdout)");
  add_limits(c_bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.symmetry_reduction = !no_symmetry;
    cfg.feasibility_prune = !no_prune;
    if (c_construct->parsed()) return run_construct(n, k, fmt_construct, out);
    if (c_decode->parsed()) return run_decode(n, k, l, fmt_decode, out);
    if (c_verify->parsed())
      return run_verify(input, k, lengths_spec, oracle_only, seed, all_limit, cfg, fmt_verify, out);
    if (c_search->parsed())
      return run_search(parse_int_list(n_list), k, hint_construction, cfg, fmt_search, out);
    if (c_bounds->parsed()) return run_bounds(parse_int_list(n_list), k, exact, cfg, fmt_bounds, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
