#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cprofit/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* bin = std::getenv("CPROFIT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CPROFIT_BIN must point at the cli binary");
  return bin;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out_file = fs::temp_directory_path() / "cprofit_cli_out.txt";
  const std::string command =
      cli_path() + " " + args + " > " + out_file.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string body_after_header(const std::string& content) {
  const std::size_t first_newline = content.find('\n');
  return content.substr(first_newline + 1);
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("eval with the unitary flag emits matching curves") {
  const fs::path data = write_file("cli_four_rows.csv",
                                   "y,t,score\n1,1,4\n0,0,3\n1,0,2\n0,1,1\n");
  const fs::path prefix = fs::temp_directory_path() / "cli_eval_unitary";
  const RunResult run =
      run_cli("eval " + data.string() + " --unitary --out " + prefix.string());
  CHECK(run.exit_code == 0);

  const std::string uplift = slurp(prefix.string() + "_uplift_curve.csv");
  const std::string profit = slurp(prefix.string() + "_profit_curve.csv");
  CHECK(body_after_header(uplift) == body_after_header(profit));

  const std::string aupc = slurp(prefix.string() + "_aupc.csv");
  CHECK(aupc.find("uplift,") != std::string::npos);
  CHECK(aupc.find("profit,") != std::string::npos);

  const std::string manifest = slurp(prefix.string() + "_manifest.json");
  CHECK(manifest.find("fnv1a64") != std::string::npos);
}

TEST_CASE("eval uses per-row cost-benefit columns when present") {
  const fs::path data = write_file(
      "cli_cb_rows.csv",
      "y,t,score,cb00,cb01,cb10,cb11\n"
      "1,1,4,120,99,0,-1\n0,0,3,120,99,0,-1\n1,0,2,120,99,0,-1\n"
      "0,1,1,120,99,0,-1\n");
  const fs::path with_cb = fs::temp_directory_path() / "cli_eval_rowcb";
  const fs::path forced = fs::temp_directory_path() / "cli_eval_forced";
  CHECK(run_cli("eval " + data.string() + " --out " + with_cb.string())
            .exit_code == 0);
  CHECK(run_cli("eval " + data.string() + " --unitary --out " +
                forced.string())
            .exit_code == 0);
  const std::string row_cb = slurp(with_cb.string() + "_profit_curve.csv");
  const std::string unit = slurp(forced.string() + "_profit_curve.csv");
  CHECK(row_cb != unit);
}

TEST_CASE("eval rejects non-binary outcomes with the row number") {
  const fs::path data =
      write_file("cli_bad_y.csv", "y,t,score\n1,1,4\n2,0,3\n");
  const RunResult run = run_cli("eval " + data.string() + " --out " +
                                (fs::temp_directory_path() / "cli_bad").string());
  CHECK(run.exit_code == 2);
  CHECK(run.output.find("row 2") != std::string::npos);
}

TEST_CASE("eval warns on an empty treatment arm but still writes curves") {
  const fs::path data =
      write_file("cli_one_arm.csv", "y,t,score\n1,0,3\n0,0,2\n1,0,1\n");
  const fs::path prefix = fs::temp_directory_path() / "cli_one_arm_out";
  const RunResult run =
      run_cli("eval " + data.string() + " --out " + prefix.string());
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("warning") != std::string::npos);
  CHECK(fs::exists(prefix.string() + "_uplift_curve.csv"));
}

TEST_CASE("entropy prints the flat-prior value and rejects zeros") {
  const RunResult ok = run_cli("entropy 1 1 1 1");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("1.08333333") != std::string::npos);

  const RunResult bad = run_cli("entropy 0 1 1 1");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("sim-normal emits one row per repetition and is seed-stable") {
  const fs::path config = write_file("cli_sim_normal.json", R"({
    "n_features": 3, "p_treat": 0.3, "n_train": 150, "n_test": 300,
    "scale_c": 1.0, "repetitions": 2, "master_seed": 5,
    "report_mi_y1": true
  })");
  const fs::path out_a = fs::temp_directory_path() / "cli_norm_a.csv";
  const fs::path out_b = fs::temp_directory_path() / "cli_norm_b.csv";
  CHECK(run_cli("sim-normal --config " + config.string() + " --out " +
                out_a.string())
            .exit_code == 0);
  CHECK(run_cli("sim-normal --config " + config.string() + " --threads 3 "
                "--out " + out_b.string())
            .exit_code == 0);
  const std::string a = slurp(out_a);
  CHECK(a == slurp(out_b));
  CHECK(std::count(a.begin(), a.end(), '\n') == 3);  // header + 2 rows
  CHECK(a.find("mi_ratio_y1") != std::string::npos);

  // rerunning from the manifest reproduces the bytes
  const fs::path out_c = fs::temp_directory_path() / "cli_norm_c.csv";
  CHECK(run_cli("sim-normal --config " + out_a.string() + ".manifest.json" +
                " --out " + out_c.string())
            .exit_code == 0);
  CHECK(slurp(out_c) == a);
}

TEST_CASE("sim-normal rejects a bad config field by name") {
  const fs::path config =
      write_file("cli_sim_normal_bad.json", R"({"scale_c": "big"})");
  const RunResult run = run_cli("sim-normal --config " + config.string());
  CHECK(run.exit_code == 2);
  CHECK(run.output.find("scale_c") != std::string::npos);
}

TEST_CASE("sim-dirichlet grid mode emits a row per cell") {
  const fs::path config = write_file("cli_sim_dir.json", R"({
    "proportions": [0.6, 0.2, 0.1, 0.1], "mi_ratio_target": 0.05,
    "n_population": 300, "repetitions": 2, "master_seed": 9,
    "n_u_range": [1, 10], "n_p_range": [1, 10]
  })");
  const fs::path out_a = fs::temp_directory_path() / "cli_dir_a.csv";
  const fs::path out_b = fs::temp_directory_path() / "cli_dir_b.csv";
  CHECK(run_cli("sim-dirichlet --config " + config.string() +
                " --mode grid --out " + out_a.string())
            .exit_code == 0);
  CHECK(run_cli("sim-dirichlet --config " + config.string() +
                " --mode grid --threads 4 --out " + out_b.string())
            .exit_code == 0);
  const std::string a = slurp(out_a);
  CHECK(a == slurp(out_b));
  CHECK(std::count(a.begin(), a.end(), '\n') == 5);  // header + 4 cells
  CHECK(a.rfind("n_u,n_p,win_rate_uplift,mean_aupc_u,mean_aupc_p", 0) == 0);

  // round trip: the emitted rows parse back into grid cells
  std::stringstream lines(a);
  std::string line;
  std::getline(lines, line);
  int parsed = 0;
  while (std::getline(lines, line)) {
    int n_u = 0, n_p = 0;
    double win = -1, mu = 0, mp = 0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &n_u, &n_p, &win,
                        &mu, &mp) == 5);
    CHECK(n_u >= 1);
    CHECK(n_p >= 1);
    CHECK(win >= 0.0);
    CHECK(win <= 1.0);
    ++parsed;
  }
  CHECK(parsed == 4);
}

TEST_CASE("sim-dirichlet sweep mode emits a row per mu") {
  const fs::path config = write_file("cli_sim_sweep.json", R"({
    "proportions": [0.6, 0.2, 0.1, 0.1], "mi_ratio_target": 0.05,
    "n_population": 300, "repetitions": 2, "master_seed": 9,
    "n_u_range": [1, 10], "n_p_range": [1, 10],
    "mu_grid": [[0.25,0.25,0.25,0.25],[0.6,0.2,0.1,0.1]]
  })");
  const fs::path out = fs::temp_directory_path() / "cli_sweep.csv";
  CHECK(run_cli("sim-dirichlet --config " + config.string() +
                " --mode sweep --out " + out.string())
            .exit_code == 0);
  const std::string content = slurp(out);
  CHECK(std::count(content.begin(), content.end(), '\n') == 3);
  CHECK(content.rfind("S0,S1,uplift_win_ratio", 0) == 0);

  // a manifest carries its mode, so the rerun needs no --mode flag
  const fs::path rerun = fs::temp_directory_path() / "cli_sweep_rerun.csv";
  CHECK(run_cli("sim-dirichlet --config " + out.string() + ".manifest.json" +
                " --out " + rerun.string())
            .exit_code == 0);
  CHECK(slurp(rerun) == content);
}

TEST_CASE("seed flag overrides the config seed") {
  const fs::path config = write_file("cli_seed.json", R"({
    "proportions": [0.6, 0.2, 0.1, 0.1], "concentration": 5.0,
    "n_population": 200, "repetitions": 2, "master_seed": 1,
    "n_u_range": [5], "n_p_range": [5]
  })");
  const fs::path out_a = fs::temp_directory_path() / "cli_seed_a.csv";
  const fs::path out_b = fs::temp_directory_path() / "cli_seed_b.csv";
  CHECK(run_cli("sim-dirichlet --config " + config.string() +
                " --seed 1 --out " + out_a.string())
            .exit_code == 0);
  CHECK(run_cli("sim-dirichlet --config " + config.string() +
                " --seed 2 --out " + out_b.string())
            .exit_code == 0);
  CHECK(slurp(out_a) != slurp(out_b));
}
