#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <chordspan/io.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CHORDSPAN_CLI_PATH) + " " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("chordspan_test_" + std::to_string(getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("construct emits the 9-chord document for (16,2)") {
  RunResult r = run_cli("construct -n 16 -k 2 --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["chord_count"] == 9);
  REQUIRE(j["b"] == 4);
  REQUIRE(j["alpha"] == 2);
  REQUIRE(j["tail_chords"] == nlohmann::json::parse("[[2,4],[2,5]]"));
}

TEST_CASE("construct rejects n below the threshold with exit 2") {
  RunResult r = run_cli("construct -n 15 -k 2");
  REQUIRE(r.code == 2);
  REQUIRE(r.output.find("requires n >= (k+2)^k = 16") != std::string::npos);
}

TEST_CASE("construct renders DOT") {
  RunResult r = run_cli("construct -n 16 -k 2 --format dot");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("layout=circo") != std::string::npos);
  REQUIRE(r.output.find("16 -- 1;") != std::string::npos);
}

TEST_CASE("decode emits witnesses and enforces the length policy") {
  RunResult r10 = run_cli("decode -n 16 -k 2 -l 10");
  REQUIRE(r10.code == 0);
  auto j = nlohmann::json::parse(r10.output);
  REQUIRE(j["vertices"] == nlohmann::json::parse("[1,3,4,5,6,12,13,14,15,16]"));

  RunResult r2 = run_cli("decode -n 16 -k 2 -l 2");
  REQUIRE(r2.code == 2);
  REQUIRE(r2.output.find("l=2 excluded by simple-graph convention") != std::string::npos);

  RunResult r16 = run_cli("decode -n 16 -k 2 -l 16");
  REQUIRE(r16.code == 0);
  auto h = nlohmann::json::parse(r16.output);
  REQUIRE(h["length"] == 16);
  REQUIRE(h["chord_edges"] == nlohmann::json::parse("[[1,3],[2,4]]"));

  RunResult human = run_cli("decode -n 16 -k 2 -l 10 --format human");
  REQUIRE(human.code == 0);
  REQUIRE(human.output.find("L2 j=1 digits=[3]") != std::string::npos);
}

TEST_CASE("verify passes the constructed graph and fails the bare cycle") {
  auto graph_file = temp_file("f16.json");
  RunResult built = run_cli("construct -n 16 -k 2 -o " + graph_file.string());
  REQUIRE(built.code == 0);

  RunResult ok = run_cli("verify -i " + graph_file.string() + " -k 2");
  REQUIRE(ok.code == 0);
  auto j = nlohmann::json::parse(ok.output);
  REQUIRE(j["satisfied"] == true);

  RunResult oracle_only = run_cli("verify -i " + graph_file.string() + " -k 2 --oracle-only");
  REQUIRE(oracle_only.code == 0);
  auto oj = nlohmann::json::parse(oracle_only.output);
  for (const auto& st : oj["lengths"]) REQUIRE(st["state"] == "ORACLE-FOUND");

  auto bare_file = temp_file("c16.txt");
  {
    std::ofstream out(bare_file);
    out << "n=16\n";
  }
  RunResult bare = run_cli("verify -i " + bare_file.string() + " -k 2 --oracle-only");
  REQUIRE(bare.code == 1);
  auto bj = nlohmann::json::parse(bare.output);
  REQUIRE(bj["satisfied"] == false);

  RunResult sampled = run_cli("verify -i " + graph_file.string() + " -k 2 --lengths sample:5 --seed 9");
  RunResult sampled_again =
      run_cli("verify -i " + graph_file.string() + " -k 2 --lengths sample:5 --seed 9");
  REQUIRE(sampled.code == 0);
  REQUIRE(sampled.output == sampled_again.output);

  RunResult listed = run_cli("verify -i " + graph_file.string() + " -k 2 --lengths 3,10..12");
  REQUIRE(listed.code == 0);
  REQUIRE(nlohmann::json::parse(listed.output)["lengths"].size() == 4);

  RunResult out_of_range = run_cli("verify -i " + graph_file.string() + " -k 2 --lengths 2");
  REQUIRE(out_of_range.code == 2);

  std::filesystem::remove(graph_file);
  std::filesystem::remove(bare_file);
}

TEST_CASE("search prints exact CSV rows") {
  RunResult r = run_cli("search -n 6..7 -k 2");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("n,k,c,status,seconds\n") == 0);
  REQUIRE(r.output.find("6,2,3,exact,") != std::string::npos);
  REQUIRE(r.output.find("7,2,3,exact,") != std::string::npos);
}

TEST_CASE("bounds prints the sandwich table") {
  RunResult r = run_cli("bounds -k 2 -n 16,256,65536");
  REQUIRE(r.code == 0);
  REQUIRE(r.output.find("n,k,log_lower,counting_lower,theorem2_upper,constructed,exact,ratio,ok\n") == 0);
  REQUIRE(r.output.find("16,2,4,2,12,9,,2.2500,ok") != std::string::npos);
  REQUIRE(r.output.find("65536,2,") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  REQUIRE(run_cli("construct -n 16").code == 2);          // missing -k
  REQUIRE(run_cli("frobnicate").code == 2);               // unknown subcommand
  REQUIRE(run_cli("decode -n 16 -k 2 -l 99").code == 2);  // l > n
}
