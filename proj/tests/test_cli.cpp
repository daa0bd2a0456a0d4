#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <omp.h>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "commands.hpp"
#include "revgap/errors.hpp"
#include "revgap/io.hpp"

using namespace revgap;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("revgap_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentSpec small_spec(const fs::path& out) {
  auto spec = parse_spec(json::parse(R"({
    "profiles": [{"id": "prolate", "kind": "spheroid", "a": 1.0, "b": 2.0},
                 {"id": "quartic", "kind": "even-polynomial", "coefficients": [1.0, 0.3, 0.1]}],
    "n_list": [3], "m_max": 3, "N": 24, "p_list": [0.0, 0.5], "seeds": [0, 1, 2],
    "s_grid": [0.0, 0.5, 1.0]
  })"));
  spec.out_dir = out.string();
  return spec;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(REVGAP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("profile JSON parsing") {
  CHECK(profile_from_json(json::parse(R"({"kind": "ball"})")).kind() == Profile::Kind::kBall);
  const auto h = profile_from_json(json::parse(R"({"kind": "homotopy", "s": 0.5, "base": {"kind": "spheroid", "a": 1, "b": 2}})"));
  CHECK(h.eval(1.0).value == doctest::Approx(1.5));
  const auto sh = profile_from_json(json::parse(R"({"kind": "shifted", "shift": 0.1, "base": {"kind": "ball"}})"));
  CHECK_FALSE(sh.symmetric());
  CHECK_THROWS_AS(profile_from_json(json::parse(R"({"kind": "cube"})")), InputError);
  CHECK_THROWS_AS(profile_from_json(json::parse(R"({"kind": "spheroid", "a": -1, "b": 2})")), InputError);
  CHECK_THROWS_AS(profile_from_json(json::parse(R"({"kind": "spheroid", "a": 1})")), InputError);
}

TEST_CASE("experiment spec parsing") {
  const auto bare = parse_spec(json::parse(R"({"id": "b", "kind": "ball"})"));
  REQUIRE(bare.profiles.size() == 1);
  CHECK(bare.profiles[0].id == "b");
  CHECK(bare.n_list == std::vector<int>{3});
  CHECK(bare.basis_size == 48);
  const auto full = small_spec("x");
  CHECK(full.basis_size == 24);
  CHECK(full.m_max == 3);
  CHECK(full.seeds.size() == 3);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"profiles": [], "n_list": [1]})")), InputError);
  CHECK_THROWS_AS(parse_spec(json::parse(R"({"profiles": [{"kind": "ball"}], "N": 2})")), InputError);
  CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), InputError);
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code_for(InputError("x")) == 2);
  CHECK(cli::exit_code_for(ValidationError("x")) == 2);
  CHECK(cli::exit_code_for(ParameterError("x")) == 2);
  CHECK(cli::exit_code_for(DiagnosticError("x")) == 1);
  CHECK(cli::exit_code_for(ConditioningError("x")) == 1);
}

TEST_CASE("commands write their reports") {
  const auto dir = scratch_dir("commands");
  const auto spec = small_spec(dir);
  CHECK(cli::cmd_validate(spec) == cli::kOk);
  CHECK(cli::cmd_spectrum(spec) == cli::kOk);
  CHECK(cli::cmd_inequality(spec) == cli::kOk);
  CHECK(cli::cmd_homotopy(spec) == cli::kOk);
  for (const char* f : {"validate.json", "spectrum.json", "spectrum.csv", "inequality.json", "inequality.csv",
                        "homotopy.json", "homotopy.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  const auto spectrum = json::parse(slurp(dir / "spectrum.json"));
  CHECK(spectrum["ok"] == true);
  const std::string csv = slurp(dir / "inequality.csv");
  CHECK(csv.rfind("profile_id,n,seed,kind,p,deficit,margin,tolerance,pass,certified,stab_m1,stab_m2,stab_m3\n", 0) == 0);
}

TEST_CASE("inequality CSV is byte-identical across runs and thread counts") {
  const auto a = scratch_dir("det_a");
  const auto b = scratch_dir("det_b");
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  REQUIRE(cli::cmd_inequality(small_spec(a)) == cli::kOk);
  omp_set_num_threads(3);
  REQUIRE(cli::cmd_inequality(small_spec(b)) == cli::kOk);
  omp_set_num_threads(threads);
  CHECK(slurp(a / "inequality.csv") == slurp(b / "inequality.csv"));
  CHECK(run_cli("inequality --spec " + (a / "spec.json").string()) == 2);  // no spec file there
}

TEST_CASE("an invalid profile fails validation") {
  const auto dir = scratch_dir("invalid");
  auto spec = parse_spec(json::parse(R"({"id": "t2", "kind": "even-polynomial", "coefficients": [0.0, 1.0]})"));
  spec.out_dir = dir.string();
  CHECK(cli::cmd_validate(spec) == cli::kAssertionFailed);
  const auto report = json::parse(slurp(dir / "validate.json"));
  CHECK(report["ok"] == false);
}

TEST_CASE("binary exit codes") {
  const auto dir = scratch_dir("binary");
  {
    std::ofstream(dir / "ball.json") << R"({"id": "ball", "kind": "ball"})";
    std::ofstream(dir / "bad.json") << R"({"kind": "ball")";
    std::ofstream(dir / "degenerate.json") << R"({"id": "t2", "kind": "even-polynomial", "coefficients": [0.0, 1.0]})";
  }
  const std::string out = " --out " + (dir / "out").string();
  CHECK(run_cli("validate --spec " + (dir / "ball.json").string() + out) == 0);
  CHECK(run_cli("spectrum --basis-size 16 --m-max 2 --spec " + (dir / "ball.json").string() + out) == 0);
  CHECK(run_cli("validate --spec " + (dir / "degenerate.json").string() + out) == 1);
  CHECK(run_cli("spectrum --spec " + (dir / "degenerate.json").string() + out) == 2);
  CHECK(run_cli("validate --spec " + (dir / "bad.json").string() + out) == 2);
  CHECK(run_cli("validate") == 2);
  CHECK(run_cli("frobnicate --spec x") == 2);
  CHECK(run_cli("spectrum --n 1 --spec " + (dir / "ball.json").string() + out) == 2);
}
