#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cprofit/curves.hpp"
#include "cprofit/information.hpp"
#include "cprofit/io.hpp"
#include "cprofit/logistic.hpp"
#include "cprofit/sim_dirichlet.hpp"
#include "cprofit/sim_normal.hpp"

namespace {

using nlohmann::json;

constexpr const char* kArtifactVersion = "0.1.0";

// Exit codes: 0 ok, 2 validation, 3 convergence, 4 I/O.
enum ExitCode { kOk = 0, kValidation = 2, kConvergence = 3, kIo = 4 };

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw cprofit::ValidationError("config parse error in " + path.string() +
                                   ": " + err.what());
  }
  // A manifest is accepted wherever a config is: its "config" object is
  // the fully resolved configuration of the original run.
  if (j.is_object() && j.contains("config") && j.contains("artifact_version"))
    return j["config"];
  return j;
}

template <typename T>
T field_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw cprofit::ValidationError("config field '" + key +
                                   "' has the wrong type");
  }
}

std::vector<int> parse_size_range(const json& j, const std::string& key,
                                  int default_from, int default_to) {
  std::vector<int> values;
  if (!j.contains(key)) {
    for (int v = default_from; v <= default_to; ++v) values.push_back(v);
    return values;
  }
  const json& node = j.at(key);
  if (node.is_array()) {
    for (const json& item : node) {
      if (!item.is_number_integer())
        throw cprofit::ValidationError("config field '" + key +
                                       "' must hold integers");
      values.push_back(item.get<int>());
    }
  } else if (node.is_object()) {
    const int from = field_or<int>(node, "from", 1);
    const int to = field_or<int>(node, "to", from);
    const int step = field_or<int>(node, "step", 1);
    if (step < 1 || to < from)
      throw cprofit::ValidationError("config field '" + key +
                                     "' has an invalid range");
    for (int v = from; v <= to; v += step) values.push_back(v);
  } else {
    throw cprofit::ValidationError("config field '" + key +
                                   "' must be an array or {from,to,step}");
  }
  if (values.empty())
    throw cprofit::ValidationError("config field '" + key + "' is empty");
  for (int v : values)
    if (v < 1)
      throw cprofit::ValidationError("config field '" + key +
                                     "' must be >= 1");
  return values;
}

cprofit::CostBenefitMatrix parse_cb_field(const json& j) {
  if (!j.contains("cb")) return cprofit::CostBenefitMatrix::unitary();
  const json& node = j.at("cb");
  if (node.is_string() && node.get<std::string>() == "unitary")
    return cprofit::CostBenefitMatrix::unitary();
  if (node.is_array() && node.size() == 4 && node[0].is_number())
    return {node[0].get<double>(), node[1].get<double>(),
            node[2].get<double>(), node[3].get<double>()};
  throw cprofit::ValidationError(
      "config field 'cb' must be \"unitary\" or [cb00,cb01,cb10,cb11]");
}

void write_manifest(const std::filesystem::path& path,
                    const std::string& command, std::uint64_t master_seed,
                    const json& config,
                    const std::vector<std::filesystem::path>& outputs) {
  json manifest;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["command"] = command;
  manifest["master_seed"] = master_seed;
  manifest["config"] = config;
  json files = json::array();
  for (const auto& file : outputs) {
    files.push_back(
        {{"path", file.string()}, {"fnv1a64", cprofit::file_digest(file)}});
  }
  manifest["outputs"] = files;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
  out << manifest.dump(2) << '\n';
}

int run_eval(const std::string& data_path, const std::string& cb_arg,
             bool unitary, const std::string& out_prefix) {
  cprofit::EvalDataset dataset = cprofit::read_eval_csv(data_path);

  std::optional<cprofit::CostBenefitMatrix> constant_cb;
  if (unitary) {
    constant_cb = cprofit::CostBenefitMatrix::unitary();
  } else if (!cb_arg.empty()) {
    cprofit::CostBenefitMatrix cb;
    if (std::sscanf(cb_arg.c_str(), "%lf,%lf,%lf,%lf", &cb.cb00, &cb.cb01,
                    &cb.cb10, &cb.cb11) != 4)
      throw cprofit::ValidationError(
          "--cb expects four comma-separated numbers cb00,cb01,cb10,cb11");
    constant_cb = cb;
  }
  if (constant_cb) {
    for (cprofit::RankedRow& row : dataset.rows) row.cb = *constant_cb;
  }

  bool has_control = false;
  bool has_treated = false;
  for (const cprofit::RankedRow& row : dataset.rows) {
    has_control |= row.t == 0;
    has_treated |= row.t == 1;
  }
  if (!has_control)
    std::cerr << "warning: no control rows (t=0); curves use the "
                 "missing-arm convention\n";
  if (!has_treated)
    std::cerr << "warning: no treated rows (t=1); curves use the "
                 "missing-arm convention\n";

  const cprofit::RankedDataset ranked =
      cprofit::RankedDataset::ranked_by_score(dataset.rows);
  const cprofit::Curve uplift =
      cprofit::uplift_curve(ranked).to_per_capita();
  const cprofit::Curve profit =
      cprofit::empirical_profit_curve(ranked).to_per_capita();

  const auto curve_table = [](const cprofit::Curve& curve,
                              const std::string& name) {
    cprofit::CsvTable table;
    table.header = {"k", name};
    for (Eigen::Index i = 0; i < curve.values.size(); ++i)
      table.rows.push_back(
          {std::to_string(i + 1), cprofit::format_number(curve.values[i])});
    return table;
  };
  const std::filesystem::path uplift_path = out_prefix + "_uplift_curve.csv";
  const std::filesystem::path profit_path = out_prefix + "_profit_curve.csv";
  const std::filesystem::path aupc_path = out_prefix + "_aupc.csv";
  cprofit::write_csv(uplift_path, curve_table(uplift, "value"));
  cprofit::write_csv(profit_path, curve_table(profit, "value"));
  cprofit::CsvTable aupc_table;
  aupc_table.header = {"curve", "aupc"};
  aupc_table.rows = {
      {"uplift", cprofit::format_number(cprofit::aupc(uplift))},
      {"profit", cprofit::format_number(cprofit::aupc(profit))}};
  cprofit::write_csv(aupc_path, aupc_table);

  json config;
  config["data"] = data_path;
  config["unitary"] = unitary;
  if (!cb_arg.empty()) config["cb"] = cb_arg;
  config["normalization"] = "per_capita";
  write_manifest(out_prefix + "_manifest.json", "eval", 0, config,
                 {uplift_path, profit_path, aupc_path});
  return kOk;
}

int run_sim_normal(const std::string& config_path,
                   std::optional<std::uint64_t> seed, const std::string& out,
                   int threads) {
  json config = config_path.empty() ? json::object() : load_json(config_path);
  cprofit::NormalSimConfig cfg;
  cfg.n_features = field_or(config, "n_features", cfg.n_features);
  cfg.p_treat = field_or(config, "p_treat", cfg.p_treat);
  cfg.n_train = field_or(config, "n_train", cfg.n_train);
  cfg.n_test = field_or(config, "n_test", cfg.n_test);
  cfg.eta0 = field_or(config, "eta0", cfg.eta0);
  cfg.eta1 = field_or(config, "eta1", cfg.eta1);
  cfg.c_reg = field_or(config, "c_reg", cfg.c_reg);
  cfg.repetitions = field_or(config, "repetitions", cfg.repetitions);
  cfg.master_seed = field_or(config, "master_seed", cfg.master_seed);
  cfg.report_mi_y1 = field_or(config, "report_mi_y1", cfg.report_mi_y1);
  if (config.contains("scale_c")) {
    const json& scales = config.at("scale_c");
    cfg.scale_grid.clear();
    if (scales.is_number()) {
      cfg.scale_grid.push_back(scales.get<double>());
    } else if (scales.is_array()) {
      for (const json& c : scales) cfg.scale_grid.push_back(c.get<double>());
    } else {
      throw cprofit::ValidationError(
          "config field 'scale_c' must be a number or an array");
    }
  }
  if (seed) cfg.master_seed = *seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& err) {
    throw cprofit::ValidationError(err.what());
  }

  const std::vector<cprofit::NormalRepRow> rows =
      cprofit::run_normal_experiment(cfg, threads);

  cprofit::CsvTable table;
  table.header = {"rep",          "scale_c",        "mi_ratio",
                  "aupc_uplift",  "aupc_predictive", "measured_s0",
                  "measured_s1"};
  if (cfg.report_mi_y1) table.header.push_back("mi_ratio_y1");
  for (const cprofit::NormalRepRow& row : rows) {
    std::vector<std::string> fields = {
        std::to_string(row.rep),
        cprofit::format_number(row.scale_c),
        cprofit::format_number(row.mi_ratio),
        cprofit::format_number(row.aupc_uplift),
        cprofit::format_number(row.aupc_predictive),
        cprofit::format_number(row.measured_s0),
        cprofit::format_number(row.measured_s1)};
    if (cfg.report_mi_y1)
      fields.push_back(cprofit::format_number(row.mi_ratio_y1));
    table.rows.push_back(std::move(fields));
  }
  const std::filesystem::path out_path =
      out.empty() ? "sim_normal_results.csv" : out;
  cprofit::write_csv(out_path, table);

  json resolved;
  resolved["n_features"] = cfg.n_features;
  resolved["p_treat"] = cfg.p_treat;
  resolved["n_train"] = cfg.n_train;
  resolved["n_test"] = cfg.n_test;
  resolved["scale_c"] = cfg.scale_grid;
  resolved["eta0"] = cfg.eta0;
  resolved["eta1"] = cfg.eta1;
  resolved["c_reg"] = cfg.c_reg;
  resolved["repetitions"] = cfg.repetitions;
  resolved["master_seed"] = cfg.master_seed;
  resolved["report_mi_y1"] = cfg.report_mi_y1;
  write_manifest(out_path.string() + ".manifest.json", "sim-normal",
                 cfg.master_seed, resolved, {out_path});
  return kOk;
}

cprofit::DirichletSimConfig parse_dirichlet_config(const json& config) {
  cprofit::DirichletSimConfig cfg;
  if (config.contains("proportions")) {
    const json& p = config.at("proportions");
    if (!p.is_array() || p.size() != 4)
      throw cprofit::ValidationError(
          "config field 'proportions' must be an array of 4 numbers");
    for (int i = 0; i < 4; ++i)
      cfg.proportions[static_cast<std::size_t>(i)] = p[i].get<double>();
  }
  if (config.contains("concentration")) {
    cfg.concentration = field_or<double>(config, "concentration", 0.0);
    cfg.mi_ratio_target.reset();
  } else if (config.contains("mi_ratio_target")) {
    cfg.mi_ratio_target = field_or<double>(config, "mi_ratio_target", 0.01);
  }
  cfg.n_population = field_or(config, "n_population", cfg.n_population);
  cfg.repetitions = field_or(config, "repetitions", cfg.repetitions);
  cfg.master_seed = field_or(config, "master_seed", cfg.master_seed);
  cfg.p_treat = field_or(config, "p_treat", cfg.p_treat);
  cfg.tie_epsilon = field_or(config, "tie_epsilon", cfg.tie_epsilon);
  cfg.cb = parse_cb_field(config);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& err) {
    throw cprofit::ValidationError(err.what());
  }
  return cfg;
}

json dump_dirichlet_config(const cprofit::DirichletSimConfig& cfg,
                           const std::vector<int>& n_u_range,
                           const std::vector<int>& n_p_range) {
  json resolved;
  resolved["proportions"] = cfg.proportions;
  if (cfg.concentration)
    resolved["concentration"] = *cfg.concentration;
  if (cfg.mi_ratio_target)
    resolved["mi_ratio_target"] = *cfg.mi_ratio_target;
  resolved["n_population"] = cfg.n_population;
  resolved["repetitions"] = cfg.repetitions;
  resolved["master_seed"] = cfg.master_seed;
  resolved["p_treat"] = cfg.p_treat;
  resolved["tie_epsilon"] = cfg.tie_epsilon;
  resolved["cb"] = {cfg.cb.cb00, cfg.cb.cb01, cfg.cb.cb10, cfg.cb.cb11};
  resolved["n_u_range"] = n_u_range;
  resolved["n_p_range"] = n_p_range;
  return resolved;
}

int run_sim_dirichlet(const std::string& config_path, std::string mode,
                      bool mode_given, std::optional<std::uint64_t> seed,
                      const std::string& out, int threads) {
  json config = config_path.empty() ? json::object() : load_json(config_path);
  if (!mode_given && config.contains("mode"))
    mode = field_or<std::string>(config, "mode", mode);
  cprofit::DirichletSimConfig cfg = parse_dirichlet_config(config);
  if (seed) cfg.master_seed = *seed;
  const std::vector<int> n_u_range =
      parse_size_range(config, "n_u_range", 1, 50);
  const std::vector<int> n_p_range =
      parse_size_range(config, "n_p_range", 1, 50);

  cprofit::CsvTable table;
  std::filesystem::path out_path;
  if (mode == "grid") {
    const std::vector<cprofit::GridCell> cells =
        cprofit::run_variance_grid(cfg, n_u_range, n_p_range, threads);
    table.header = {"n_u", "n_p", "win_rate_uplift", "mean_aupc_u",
                    "mean_aupc_p"};
    for (const cprofit::GridCell& cell : cells)
      table.rows.push_back({std::to_string(cell.n_u), std::to_string(cell.n_p),
                            cprofit::format_number(cell.win_rate_uplift),
                            cprofit::format_number(cell.mean_aupc_u),
                            cprofit::format_number(cell.mean_aupc_p)});
    out_path = out.empty() ? "sim_dirichlet_grid.csv" : out;
  } else if (mode == "sweep") {
    if (!config.contains("mu_grid"))
      throw cprofit::ValidationError(
          "sweep mode requires config field 'mu_grid'");
    std::vector<std::array<double, 4>> mu_grid;
    for (const json& entry : config.at("mu_grid")) {
      if (!entry.is_array() || entry.size() != 4)
        throw cprofit::ValidationError(
            "config field 'mu_grid' entries must be arrays of 4 numbers");
      mu_grid.push_back({entry[0].get<double>(), entry[1].get<double>(),
                         entry[2].get<double>(), entry[3].get<double>()});
    }
    const std::vector<cprofit::SweepRow> rows = cprofit::run_outcome_sweep(
        cfg, mu_grid, n_u_range, n_p_range, threads);
    table.header = {"S0", "S1", "uplift_win_ratio"};
    for (const cprofit::SweepRow& row : rows)
      table.rows.push_back({cprofit::format_number(row.s0),
                            cprofit::format_number(row.s1),
                            cprofit::format_number(row.uplift_win_ratio)});
    out_path = out.empty() ? "sim_dirichlet_sweep.csv" : out;
  } else {
    throw cprofit::ValidationError("--mode must be 'grid' or 'sweep'");
  }

  cprofit::write_csv(out_path, table);
  json resolved = dump_dirichlet_config(cfg, n_u_range, n_p_range);
  if (config.contains("mu_grid")) resolved["mu_grid"] = config.at("mu_grid");
  resolved["mode"] = mode;
  write_manifest(out_path.string() + ".manifest.json", "sim-dirichlet",
                 cfg.master_seed, resolved, {out_path});
  return kOk;
}

int run_entropy(double a, double b, double c, double d) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0))
    throw cprofit::ValidationError("entropy parameters must be positive");
  const cprofit::EntropyReport report =
      cprofit::dirichlet_conditional_entropy(a, b, c, d);
  const double total = a + b + c + d;
  const double s0 = (b + d) / total;
  const double s1 = (c + d) / total;
  const double h0 = cprofit::binary_entropy(s0);
  const double h1 = cprofit::binary_entropy(s1);
  const double hj = -(a / total) * std::log(a / total) -
                    (b / total) * std::log(b / total) -
                    (c / total) * std::log(c / total) -
                    (d / total) * std::log(d / total);
  std::cout << "expected_conditional_entropy_joint,"
            << cprofit::format_number(report.joint) << '\n'
            << "expected_conditional_entropy_y0,"
            << cprofit::format_number(report.marginal_y0) << '\n'
            << "expected_conditional_entropy_y1,"
            << cprofit::format_number(report.marginal_y1) << '\n'
            << "mi_ratio_joint,"
            << cprofit::format_number(hj > 0 ? 1.0 - report.joint / hj : 0.0)
            << '\n'
            << "mi_ratio_y0,"
            << cprofit::format_number(h0 > 0 ? 1.0 - report.marginal_y0 / h0
                                             : 0.0)
            << '\n'
            << "mi_ratio_y1,"
            << cprofit::format_number(h1 > 0 ? 1.0 - report.marginal_y1 / h1
                                             : 0.0)
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal-profit evaluation toolkit: profit curves, campaign "
               "measures and the uplift-vs-predictive simulations"};
  app.require_subcommand(1);

  std::string data_path;
  std::string cb_arg;
  bool unitary = false;
  std::string out;
  std::string config_path;
  std::string mode = "grid";
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_value = 0;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate curves on a CSV dataset");
  eval->add_option("data", data_path, "input CSV with columns y,t,score")
      ->required();
  eval->add_option("--cb", cb_arg, "constant cost-benefit matrix cb00,cb01,cb10,cb11");
  eval->add_flag("--unitary", unitary, "force the unitary cost-benefit matrix");
  eval->add_option("--out", out, "output prefix (default: eval)");

  CLI::App* sim_normal = app.add_subcommand(
      "sim-normal", "Normal-features uplift vs predictive experiment");
  sim_normal->add_option("--config", config_path, "JSON config (or manifest)");
  CLI::Option* seed_opt_n =
      sim_normal->add_option("--seed", seed_value, "master seed override");
  sim_normal->add_option("--out", out, "output CSV path");
  sim_normal->add_option("--threads", threads, "worker thread cap");

  CLI::App* sim_dirichlet = app.add_subcommand(
      "sim-dirichlet", "Dirichlet potential-outcome simulation");
  sim_dirichlet->add_option("--config", config_path, "JSON config (or manifest)");
  CLI::Option* mode_opt = sim_dirichlet->add_option("--mode", mode, "grid or sweep")
      ->check(CLI::IsMember({"grid", "sweep"}));
  CLI::Option* seed_opt_d =
      sim_dirichlet->add_option("--seed", seed_value, "master seed override");
  sim_dirichlet->add_option("--out", out, "output CSV path");
  sim_dirichlet->add_option("--threads", threads, "worker thread cap");

  CLI::App* entropy = app.add_subcommand(
      "entropy", "Analytic expected conditional entropies for Dir(a,b,c,d)");
  double ea = 0, eb = 0, ec = 0, ed = 0;
  entropy->add_option("a", ea)->required();
  entropy->add_option("b", eb)->required();
  entropy->add_option("c", ec)->required();
  entropy->add_option("d", ed)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      return run_eval(data_path, cb_arg, unitary,
                      out.empty() ? "eval" : out);
    }
    if (sim_normal->parsed()) {
      if (seed_opt_n->count() > 0) seed = seed_value;
      return run_sim_normal(config_path, seed, out, threads);
    }
    if (sim_dirichlet->parsed()) {
      if (seed_opt_d->count() > 0) seed = seed_value;
      return run_sim_dirichlet(config_path, mode, mode_opt->count() > 0, seed,
                               out, threads);
    }
    if (entropy->parsed()) {
      return run_entropy(ea, eb, ec, ed);
    }
  } catch (const cprofit::ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kValidation;
  } catch (const cprofit::ConvergenceError& err) {
    std::cerr << "error: " << err.what()
              << " (gradient norm " << err.gradient_norm() << ")\n";
    return kConvergence;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kIo;
  }
  return kOk;
}
