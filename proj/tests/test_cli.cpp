#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  json report;
  bool has_report = false;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& tag) {
  std::string out_path = "cli_" + tag + ".out";
  std::string err_path = "cli_" + tag + ".err";
  std::string cmd = std::string(WHBENCH_BIN) + " " + args + " > " + out_path + " 2> " + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::ostringstream text;
  text << in.rdbuf();
  r.stdout_text = text.str();
  if (!r.stdout_text.empty()) {
    r.report = json::parse(r.stdout_text, nullptr, false);
    r.has_report = !r.report.is_discarded();
  }
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

double num(const json& pair17, int which) { return std::stod(pair17[which].get<std::string>()); }

}  // namespace

TEST_CASE("rep show prints exact generators in the standard basis") {
  RunResult r = run_cli("rep show --N 4 --basis std", "rep4");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report["command"] == "rep show");
  CHECK(r.report["pass"] == true);
  const json& z = r.report["results"]["Z_dense"];
  // diag(1, i, -1, -i)
  double expect_re[4] = {1.0, 0.0, -1.0, 0.0};
  double expect_im[4] = {0.0, 1.0, 0.0, -1.0};
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(num(z[k][k], 0) - expect_re[k]) < 1e-15);
    CHECK(std::abs(num(z[k][k], 1) - expect_im[k]) < 1e-15);
  }
  const json& x = r.report["results"]["X"];
  CHECK(x["perm"] == json::array({1, 2, 3, 0}));
}

TEST_CASE("rep show prints the wrap phase in the phase permutation basis") {
  RunResult r = run_cli("rep show --N 4 --basis pp", "reppp");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.has_report);
  const json& x = r.report["results"]["X"];
  CHECK(x["perm"] == json::array({1, 0, 3, 2}));
  CHECK(x["phase_turns"] == json::array({"0/1", "0/1", "0/1", "1/2"}));
}

TEST_CASE("rep show refuses a pp basis without a square dimension") {
  RunResult r = run_cli("rep show --N 5 --basis pp", "rep5");
  CHECK(r.exit_code == 2);
}

TEST_CASE("clifford verify accepts the conjugated metaplectic generators") {
  RunResult r = run_cli("clifford verify --N 4", "cv4");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report["pass"] == true);
  CHECK(r.report["results"]["monomial"] == true);
  CHECK(r.report["results"]["max_snap_error"].get<double>() < 1e-9);
}

TEST_CASE("clifford verify closes the full group at dimension four") {
  RunResult r = run_cli("clifford verify --N 4 --full-group", "cvfull4");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report["results"]["elements"] == 768);
  CHECK(r.report["results"]["expected_projective_order"] == 768);
  CHECK(r.report["pass"] == true);
}

TEST_CASE("clifford verify reports a budget stop with its own exit code") {
  RunResult r = run_cli("clifford verify --N 16 --full-group --budget 1000", "cvbudget");
  CHECK(r.exit_code == 3);
  REQUIRE(r.has_report);
  CHECK(r.report["pass"] == false);
  std::string err = r.report["results"]["error"].get<std::string>();
  CHECK(err.find("budget") != std::string::npos);
}

TEST_CASE("zauner reports the block structure for the three square dimensions") {
  struct Expect {
    int N, blocks, diagonals, dim;
  };
  for (Expect e : {Expect{4, 1, 1, 2}, Expect{9, 2, 3, 4}, Expect{16, 5, 1, 6}}) {
    RunResult r = run_cli("zauner --N " + std::to_string(e.N), "zauner" + std::to_string(e.N));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.has_report);
    CHECK(r.report["results"]["blocks"] == e.blocks);
    CHECK(r.report["results"]["diagonals"] == e.diagonals);
    CHECK(r.report["results"]["invariant_dim"] == e.dim);
    CHECK(r.report["pass"] == true);
  }
}

TEST_CASE("solve-n4 emits the symbolic moduli and rejects one branch") {
  RunResult r = run_cli("sic solve-n4", "solve");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.has_report);
  CHECK(r.report["pass"] == true);
  CHECK(r.report["results"]["rejected_branches"] == 1);
  CHECK(r.report["results"]["moduli"][0]["symbolic"] == "(5+3√5)/20");
  CHECK(r.report["results"]["moduli"][1]["symbolic"] == "(5-√5)/20");
  for (const auto& res : r.report["results"]["exact_residuals"]) CHECK(res == "0");
}

TEST_CASE("search writes a fiducial file that check accepts") {
  RunResult s = run_cli(
      "sic search --N 4 --zauner --seed 1 --restarts 6 --iters 4000 --out cli_fid.json",
      "search4");
  REQUIRE(s.exit_code == 0);
  REQUIRE(s.has_report);
  CHECK(s.report["results"]["converged"] == true);
  CHECK(s.report["params"]["basis"] == "pp");

  RunResult c = run_cli("sic check --file cli_fid.json", "check4");
  REQUIRE(c.exit_code == 0);
  REQUIRE(c.has_report);
  CHECK(c.report["pass"] == true);
  CHECK(c.report["results"]["max_overlap_deviation"].get<double>() < 1e-7);
  std::remove("cli_fid.json");
}

TEST_CASE("search refuses the zauner restriction in the standard basis") {
  RunResult r = run_cli("sic search --N 4 --basis std --zauner", "searchbad");
  CHECK(r.exit_code == 2);
}

TEST_CASE("check rejects a missing file") {
  RunResult r = run_cli("sic check --file no_such_fiducial.json", "checkmissing");
  CHECK(r.exit_code == 2);
}

TEST_CASE("check rejects a file whose vector is not unit norm") {
  {
    std::ofstream bad("cli_bad_fid.json");
    bad << R"({"N": 2, "basis": "std", "vector": [["1", "0"], ["1", "0"]]})" << "\n";
  }
  RunResult r = run_cli("sic check --file cli_bad_fid.json", "checkbad");
  CHECK(r.exit_code == 2);
  std::remove("cli_bad_fid.json");
}

TEST_CASE("identical searches emit identical fiducials") {
  std::string args = "sic search --N 3 --basis std --seed 5 --restarts 3 --iters 1500";
  RunResult a = run_cli(args, "det_a");
  RunResult b = run_cli(args, "det_b");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  REQUIRE(a.has_report);
  REQUIRE(b.has_report);
  CHECK(a.report["results"]["fiducial"] == b.report["results"]["fiducial"]);
  CHECK(a.report["results"]["excess"] == b.report["results"]["excess"]);
}

TEST_CASE("theta passes its law checks at the default lattice") {
  for (int n : {2, 3}) {
    RunResult r = run_cli("theta --tau 0+1i --trunc 40 --n " + std::to_string(n),
                          "theta" + std::to_string(n));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.has_report);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["results"]["max_law_residual"].get<double>() < 1e-10);
    CHECK(r.report["results"]["induced_action_residual"].get<double>() < 1e-9);
    CHECK(r.report["results"]["max_tail_bound"].get<double>() <= 1e-10);
  }
}

TEST_CASE("theta reports an uncertifiable tail with the budget exit code") {
  RunResult r = run_cli("theta --tau 0+0.000001i --trunc 40 --n 2", "thetatail");
  CHECK(r.exit_code == 3);
}

TEST_CASE("theta rejects a lattice parameter in the wrong half plane") {
  RunResult r = run_cli("theta --tau 0-1i --trunc 40 --n 2", "thetaneg");
  CHECK(r.exit_code == 2);
}

TEST_CASE("usage errors come back as exit two") {
  CHECK(run_cli("", "noargs").exit_code == 2);
  CHECK(run_cli("rep show", "missingN").exit_code == 2);
  CHECK(run_cli("sic", "sicbare").exit_code == 2);
  CHECK(run_cli("rep show --N 4 --basis nope", "badbasis").exit_code == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help", "help").exit_code == 0);
}
