#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

std::string data(const std::string& name) {
  return std::string(BMOMENT_TEST_DATA_DIR) + "/" + name;
}

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + BMOMENT_CLI_PATH + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify-graph: pure classes exit 0") {
  const auto nonzero = run_cli("classify-graph " + data("btorus_graph.json"));
  CHECK(nonzero.code == 0);
  CHECK(nonzero.out.find("\"all_nonzero\"") != std::string::npos);

  const auto zero = run_cli("classify-graph " + data("allzero_graph.json"));
  CHECK(zero.code == 0);
  CHECK(zero.out.find("\"all_zero\"") != std::string::npos);
}

TEST_CASE("classify-graph: mixed weights exit 2 with the theorem in the message") {
  const auto mixed = run_cli("classify-graph " + data("mixed_graph.json"));
  CHECK(mixed.code == 2);
  CHECK(mixed.out.find("all zero or all nonzero") != std::string::npos);
}

TEST_CASE("classify-graph: malformed JSON exits 1") {
  const auto bad = run_cli("classify-graph " + data("malformed.json"));
  CHECK(bad.code == 1);
  const auto missing = run_cli("classify-graph /nonexistent.json");
  CHECK(missing.code == 1);
}

TEST_CASE("polytope validate/vertices/contains") {
  const auto valid =
      run_cli("polytope " + data("lm_graph.json") + " " + data("lm_hs.json") + " validate");
  CHECK(valid.code == 0);
  CHECK(valid.out.find("\"ok\": true") != std::string::npos);

  const auto verts =
      run_cli("polytope " + data("lm_graph.json") + " " + data("lm_hs.json") + " vertices");
  CHECK(verts.code == 0);
  CHECK(verts.out.find("\"0/1\"") != std::string::npos);
  CHECK(verts.out.find("\"1/1\"") != std::string::npos);

  const auto inside = run_cli("polytope " + data("lm_graph.json") + " " + data("lm_hs.json") +
                              " contains " + data("point_interior.json"));
  CHECK(inside.code == 0);
  CHECK(inside.out.find("\"contains\": true") != std::string::npos);

  const auto limit = run_cli("polytope " + data("lm_graph.json") + " " + data("lm_hs.json") +
                             " contains " + data("point_exceptional.json"));
  CHECK(limit.code == 0);
  CHECK(limit.out.find("\"contains\": true") != std::string::npos);

  const auto invalid = run_cli("polytope " + data("lm_graph.json") + " " +
                               data("lm_hs_unbounded.json") + " validate");
  CHECK(invalid.code == 2);
  CHECK(invalid.out.find("exceptional_nonempty_bounded") != std::string::npos);

  const auto no_point =
      run_cli("polytope " + data("lm_graph.json") + " " + data("lm_hs.json") + " contains");
  CHECK(no_point.code == 1);

  // No b-polytope exists over an all-zero graph.
  const auto zero_graph = run_cli("polytope " + data("allzero_graph.json") + " " +
                                  data("empty_hs.json") + " validate");
  CHECK(zero_graph.code == 2);
}

TEST_CASE("moment: CSV output, summary, and determinism") {
  const std::string csv1 = "/tmp/bmoment_test_a.csv";
  const std::string csv2 = "/tmp/bmoment_test_b.csv";
  const auto a = run_cli("moment " + data("bsphere_spec.json") + " --samples 100 --seed 7 --out " +
                         csv1);
  CHECK(a.code == 0);
  CHECK(a.out.find("\"polytope_violations\": 0") != std::string::npos);

  const auto b = run_cli("moment " + data("bsphere_spec.json") + " --samples 100 --seed 7 --out " +
                         csv2);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);

  const std::string text = slurp(csv1);
  CHECK(text == slurp(csv2));
  CHECK(text.rfind("z,theta,mu_1,z_flag\n", 0) == 0);
  std::size_t rows = 0;
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    ++rows;
    const double mu = std::strtod(line.substr(line.find(',', line.find(',') + 1) + 1).c_str(),
                                  nullptr);
    CHECK(mu >= -1e-12);
  }
  CHECK(rows == 100);
  std::remove(csv1.c_str());
  std::remove(csv2.c_str());
}

TEST_CASE("moment: usage errors exit 1") {
  CHECK(run_cli("moment " + data("bsphere_spec.json") + " --samples 0").code == 1);
  CHECK(run_cli("moment " + data("unknown_spec.json") + " --samples 10").code == 1);
}

TEST_CASE("verify: suites succeed and reports are byte-identical") {
  const auto cut = run_cli("verify cut");
  CHECK(cut.code == 0);
  CHECK(cut.out.find("\"all_pass\": true") != std::string::npos);

  const auto again = run_cli("verify cut");
  CHECK(again.out == cut.out);

  const auto csym = run_cli("verify csymplectic");
  CHECK(csym.code == 0);

  // Runs at the per-check default sample counts, not the moment defaults.
  CHECK(run_cli("verify local_model").code == 0);

  CHECK(run_cli("verify nope").code == 1);
}

TEST_CASE("verify dichotomy: a mixed input graph fails with exit 2") {
  const auto mixed = run_cli("verify dichotomy --graph " + data("mixed_graph.json"));
  CHECK(mixed.code == 2);
  CHECK(mixed.out.find("\"input_graph_pure\"") != std::string::npos);
  CHECK(mixed.out.find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("BMOMENT_TOLERANCE_SCALE tightens or loosens the suite thresholds") {
  // A hopeless scale makes the nonzero-stratum magnitude check fail.
  const auto strict = run_cli("verify csymplectic", "BMOMENT_TOLERANCE_SCALE=1e-9");
  CHECK(strict.code == 2);
  const auto loose = run_cli("verify csymplectic", "BMOMENT_TOLERANCE_SCALE=100");
  CHECK(loose.code == 0);
}

}  // TEST_SUITE
