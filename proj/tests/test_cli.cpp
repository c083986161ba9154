#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "eigenid/instance_gen.hpp"
#include "eigenid/matrix.hpp"
#include "eigenid/matrix_io.hpp"
#include "eigenid/report.hpp"

using namespace eigenid;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed binary named by EIGENID_BIN with the given arguments and
// captures stdout (stderr is discarded unless merged).
CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* bin = std::getenv("EIGENID_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "EIGENID_BIN must point at the CLI binary");
  const std::string cmd =
      std::string("\"") + bin + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const std::string& temp_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/eigenid_cli_XXXXXX";
    const char* made = mkdtemp(tmpl);
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

std::string path_of(const std::string& name) { return temp_dir() + "/" + name; }

}  // namespace

TEST_CASE("gen emits a valid Hermitian matrix") {
  const CliResult r = run_cli("gen --spectrum 1:2,2:1 --seed 7");
  CHECK(r.exit_code == 0);
  std::istringstream stream(r.out);
  const CMatrix m = read_matrix_json(stream);
  CHECK(m.rows() == 3);
  CHECK(hermitian_defect(m) <= 1e-10);
}

TEST_CASE("gen is deterministic per seed") {
  const CliResult a = run_cli("gen --spectrum 0:1,1:3 --seed 5");
  const CliResult b = run_cli("gen --spectrum 0:1,1:3 --seed 5");
  const CliResult c = run_cli("gen --spectrum 0:1,1:3 --seed 6");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("gen then check round trip passes") {
  const std::string matrix = path_of("roundtrip.json");
  const CliResult g = run_cli("gen --spectrum 1:2,2:1 --seed 7 --out \"" + matrix + "\"");
  REQUIRE(g.exit_code == 0);

  const CliResult c = run_cli("check --matrix \"" + matrix + "\"");
  CHECK(c.exit_code == 0);
  const Report report = report_from_json(c.out);
  CHECK(report.max_rel_err <= 1e-8);
  CHECK(report.input_digest == matrix_digest(read_matrix_file(matrix)));
  CHECK(report.cluster_multiplicities == std::vector<int>{2, 1});

  // same check but written through --out
  const std::string report_path = path_of("roundtrip_report.json");
  const CliResult c2 =
      run_cli("check --matrix \"" + matrix + "\" --out \"" + report_path + "\"");
  CHECK(c2.exit_code == 0);
  CHECK(c2.out.empty());
  std::ifstream in(report_path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(report_from_json(text) == report);
}

TEST_CASE("check honors explicit clusters and subsets") {
  const std::string matrix = path_of("subsets.json");
  REQUIRE(run_cli("gen --spectrum 1:2,2:1 --seed 7 --out \"" + matrix + "\"").exit_code == 0);

  const CliResult c =
      run_cli("check --matrix \"" + matrix + "\" --cluster 1 --subsets \"1,2;1,3\"");
  CHECK(c.exit_code == 0);
  const Report report = report_from_json(c.out);
  REQUIRE(report.records.size() == 2);
  CHECK(report.records[0].subset.members() == std::vector<int>{1, 2});
  CHECK(report.records[1].subset.members() == std::vector<int>{1, 3});
}

TEST_CASE("check csv output starts with the header") {
  const std::string matrix = path_of("csv.json");
  REQUIRE(run_cli("gen --spectrum 0:1,3:1 --seed 2 --out \"" + matrix + "\"").exit_code == 0);
  const CliResult c = run_cli("check --matrix \"" + matrix + "\" --format csv");
  CHECK(c.exit_code == 0);
  CHECK(c.out.rfind("cluster,subset,lhs,rhs,abs_err,rel_err,numerator_sign,gap_margin", 0) == 0);
}

TEST_CASE("check fails with exit 1 when the threshold is violated") {
  const std::string matrix = path_of("strict.json");
  REQUIRE(run_cli("gen --spectrum 0:1,1:2 --seed 3 --out \"" + matrix + "\"").exit_code == 0);
  const CliResult c = run_cli("check --matrix \"" + matrix + "\" --fail-above 0.0");
  CHECK(c.exit_code == 1);
}

TEST_CASE("non-hermitian input exits 3") {
  const std::string bad = path_of("bad_hermitian.json");
  CMatrix m(2, 2);
  m(0, 1) = 1.0;  // conjugate mirror missing
  write_matrix_file(bad, m);
  const CliResult c = run_cli("check --matrix \"" + bad + "\"");
  CHECK(c.exit_code == 3);
}

TEST_CASE("usage and parse problems exit 2") {
  CHECK(run_cli("check").exit_code == 2);                          // --matrix required
  CHECK(run_cli("frobnicate").exit_code == 2);                     // unknown subcommand
  CHECK(run_cli("gen --spectrum 2:1,1:1").exit_code == 2);         // decreasing values
  CHECK(run_cli("gen --spectrum nonsense").exit_code == 2);        // malformed
  CHECK(run_cli("check --matrix /nonexistent.json").exit_code == 2);

  const std::string garbage = path_of("garbage.json");
  {
    std::ofstream out(garbage);
    out << "{ not json";
  }
  CHECK(run_cli("check --matrix \"" + garbage + "\"").exit_code == 2);

  const std::string matrix = path_of("usage.json");
  REQUIRE(run_cli("gen --spectrum 1:2,2:1 --seed 7 --out \"" + matrix + "\"").exit_code == 0);
  // subset size matching no cluster multiplicity
  CHECK(run_cli("check --matrix \"" + matrix + "\" --subsets \"1,2,3\"").exit_code == 2);
}

TEST_CASE("oversized sweeps are refused without --force") {
  const std::string matrix = path_of("huge.json");
  REQUIRE(run_cli("gen --spectrum 0:12,1:12 --seed 1 --out \"" + matrix + "\"").exit_code == 0);
  const CliResult c = run_cli("check --matrix \"" + matrix + "\"", true);
  CHECK(c.exit_code == 2);
  CHECK(c.out.find("--force") != std::string::npos);
}

TEST_CASE("lemma1 verdicts and exit codes") {
  const std::string good = path_of("unitary.json");
  write_matrix_file(good, haar_unitary(4, 19));
  const CliResult pass = run_cli("lemma1 --matrix \"" + good + "\" --split 2");
  CHECK(pass.exit_code == 0);
  CHECK(pass.out.find("PASS") != std::string::npos);
  CHECK(pass.out.find("|det P11|^2") != std::string::npos);

  const std::string bad = path_of("not_unitary.json");
  CMatrix ones(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1.0;
  write_matrix_file(bad, ones);
  CHECK(run_cli("lemma1 --matrix \"" + bad + "\" --split 1").exit_code == 3);
}
