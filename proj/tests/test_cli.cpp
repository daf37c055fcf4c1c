#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "wqed_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args) {
  const std::string command = std::string(WQED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string header_line(const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

int data_row_count(const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  int rows = -1;  // skip the header row itself
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("version and usage errors") {
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("--definitely-not-an-option") == 1);
  CHECK(run_cli("spectrum --n notanumber") == 1);
  CHECK(run_cli("") == 1);  // a subcommand is required
}

TEST_CASE("ddi-curve output schema") {
  const fs::path out = scratch_dir() / "curve.csv";
  const int code = run_cli("ddi-curve --l-min 30 --l-max 35 --l-step 2.5 --realizations 5 -o " +
                           out.string());
  REQUIRE(code == 0);

  const std::string contents = slurp(out);
  CHECK(contents.find("# schema=wqed.ddi_curve.v1") != std::string::npos);
  CHECK(contents.find("# seed=42 n_realizations=5") != std::string::npos);
  CHECK(header_line(contents) ==
        "L_nm,kL_over_pi,J_periodic,J_disordered_mean,J_disordered_stderr");
  CHECK(data_row_count(contents) == 3);

  const fs::path manifest = scratch_dir() / "curve.manifest.json";
  REQUIRE(fs::exists(manifest));
  const auto j = nlohmann::json::parse(slurp(manifest));
  CHECK(j.at("schema") == "wqed.manifest.v1");
  CHECK(j.at("subcommand") == "ddi-curve");
  CHECK(j.at("parameters").at("realizations") == 5);
}

TEST_CASE("spectrum output schema") {
  const fs::path out = scratch_dir() / "spec.csv";
  const int code = run_cli(
      "spectrum --n 2 --delta-min -5 --delta-max 5 --delta-step 1 --realizations 4 -o " +
      out.string());
  REQUIRE(code == 0);

  const std::string contents = slurp(out);
  CHECK(contents.find("# schema=wqed.spectrum.v1") != std::string::npos);
  CHECK(header_line(contents) ==
        "delta,p2_periodic,p4_periodic,xi_periodic,p2_mean,p2_stderr,p4_mean,p4_stderr,"
        "xi_mean,xi_stderr");
  CHECK(data_row_count(contents) == 11);
}

TEST_CASE("pmax and localization output schemas") {
  const fs::path pmax_out = scratch_dir() / "pmax.csv";
  REQUIRE(run_cli("pmax --n-list 1,2 --delta-min -5 --delta-max 30 --coarse-step 0.5 -o " +
                  pmax_out.string()) == 0);
  const std::string pmax_contents = slurp(pmax_out);
  CHECK(pmax_contents.find("# schema=wqed.pmax.v1") != std::string::npos);
  CHECK(header_line(pmax_contents) == "n,p_max,delta_max,boundary_flag");
  CHECK(data_row_count(pmax_contents) == 2);

  const fs::path loc_out = scratch_dir() / "loc.csv";
  REQUIRE(run_cli("localization --n-list 2 --delta-list 30 --sigma-list 0.05,0.2 "
                  "--realizations 50 -o " +
                  loc_out.string()) == 0);
  const std::string loc_contents = slurp(loc_out);
  CHECK(loc_contents.find("# schema=wqed.localization.v1") != std::string::npos);
  CHECK(header_line(loc_contents) ==
        "n,sigma_fraction,delta,t_mean,t_stderr,loc_length,loc_length_err,"
        "loc_length_conv,loc_length_conv_err");
  CHECK(data_row_count(loc_contents) == 2);
}

TEST_CASE("efficiency map periodic output") {
  const fs::path out = scratch_dir() / "map.csv";
  REQUIRE(run_cli("efficiency-map --n 2 --delta-min -2 --delta-max 2 --delta-step 1 "
                  "--l-min 0.05 --l-max 0.06 --l-step 0.01 -o " +
                  out.string()) == 0);
  const std::string contents = slurp(out);
  CHECK(header_line(contents) == "delta,L_over_lambda,xi_mean,xi_stderr");
  // 5 detunings x 2 spacings; the stderr column is nan for a periodic map.
  CHECK(data_row_count(contents) == 10);
  CHECK(contents.find(",nan") != std::string::npos);
}

TEST_CASE("manifest rerun reproduces files byte for byte") {
  const fs::path out = scratch_dir() / "rerun_base.csv";
  REQUIRE(run_cli("spectrum --n 3 --delta-min -10 --delta-max 10 --delta-step 2.5 "
                  "--realizations 24 --threads 2 -o " +
                  out.string()) == 0);
  const std::string original = slurp(out);

  const fs::path manifest = scratch_dir() / "rerun_base.manifest.json";
  REQUIRE(fs::exists(manifest));

  const fs::path copy = scratch_dir() / "rerun_copy.csv";
  REQUIRE(run_cli("rerun " + manifest.string() + " -o " + copy.string() + " --threads 5") == 0);
  CHECK(slurp(copy) == original);

  // Rerunning in place also reproduces the original.
  fs::remove(out);
  REQUIRE(run_cli("rerun " + manifest.string()) == 0);
  CHECK(slurp(out) == original);

  CHECK(run_cli("rerun " + (scratch_dir() / "missing.manifest.json").string()) == 2);
}

TEST_CASE("config file feeds options, flags override") {
  const fs::path cfg = scratch_dir() / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "[spectrum]\n"
        << "n=3\n"
        << "delta-min=-4\n"
        << "delta-max=4\n"
        << "delta-step=2\n"
        << "realizations=4\n";
  }

  const fs::path from_cfg = scratch_dir() / "from_cfg.csv";
  REQUIRE(run_cli("--config " + cfg.string() + " spectrum -o " + from_cfg.string()) == 0);
  const auto manifest =
      nlohmann::json::parse(slurp(scratch_dir() / "from_cfg.manifest.json"));
  CHECK(manifest.at("parameters").at("n") == 3);
  CHECK(data_row_count(slurp(from_cfg)) == 5);

  const fs::path overridden = scratch_dir() / "overridden.csv";
  REQUIRE(run_cli("--config " + cfg.string() + " spectrum --n 4 -o " + overridden.string()) == 0);
  const auto manifest2 =
      nlohmann::json::parse(slurp(scratch_dir() / "overridden.manifest.json"));
  CHECK(manifest2.at("parameters").at("n") == 4);
}

TEST_CASE("validate subcommand writes a report") {
  const fs::path report = scratch_dir() / "report.json";
  const int code = run_cli("validate -o " + report.string());
  CHECK(code == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j.at("schema") == "wqed.validate_report.v1");
  CHECK(j.at("passed") == true);
  CHECK(j.at("suites").size() == 4);
}
