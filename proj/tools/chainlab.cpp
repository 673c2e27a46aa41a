// chainlab command line: run one experiment and write report.json, table.csv and plot.svg.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "chainlab/experiment.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

chainlab::Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chainlab::InvalidArgument("cannot open config " + path);
  try {
    return chainlab::Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw chainlab::InvalidArgument("config " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainlab: chaining bounds on symmetric convex bodies"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run an experiment");

  std::string experiment, config_path, out, decay, body_path;
  std::vector<std::size_t> dims;
  std::vector<double> t_list;
  double q = 0, p = 0, eps = 0, t = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0, a_points = 0, cloud_size = 0, bt_cloud_size = 0;
  int n_max = -1;
  unsigned workers = 0;
  bool print_config = false;

  run->add_option("experiment", experiment, "ellipsoid | octahedron | counterexample | contraction | sandwich")
      ->required()
      ->check(CLI::IsMember({"ellipsoid", "octahedron", "counterexample", "contraction", "sandwich"}));
  run->add_option("--config", config_path, "JSON config; flags override its keys")->check(CLI::ExistingFile);
  run->add_option("--d", dims, "Dimension sweep, e.g. 8,16,32")->delimiter(',');
  run->add_option("--q", q, "Body exponent q > 1");
  run->add_option("--p", p, "Chaining exponent p > 0");
  run->add_option("--eps", eps, "Perturbation eps in (0,1)");
  run->add_option("--t", t, "Counterexample t (default 1/eps)");
  run->add_option("--t-list", t_list, "Contraction t values")->delimiter(',');
  run->add_option("--decay", decay, "Semiaxis decay, e.g. \"k^-0.5*log^-1\"");
  run->add_option("--body", body_path, "Body JSON file for sandwich/contraction")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--samples", samples, "Monte Carlo samples");
  run->add_option("--n-max", n_max, "Explicit entropy levels (0..4)");
  run->add_option("--a-points", a_points, "Size of the default a grid");
  run->add_option("--cloud-size", cloud_size, "Body cloud size");
  run->add_option("--bt-cloud-size", bt_cloud_size, "B_t cloud size");
  run->add_option("--workers", workers, "Worker thread cap");
  run->add_option("--out", out, "Output directory (default out/<experiment>)");
  run->add_flag("--print-config", print_config, "Print the effective config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  chainlab::ExperimentConfig cfg;
  try {
    chainlab::Json j = config_path.empty() ? chainlab::Json::object() : load_config(config_path);
    j["experiment"] = experiment;
    auto set = [&](const char* key, const CLI::Option* opt, auto value) {
      if (opt->count() > 0) j[key] = value;
    };
    set("d", run->get_option("--d"), dims);
    set("q", run->get_option("--q"), q);
    set("p", run->get_option("--p"), p);
    set("eps", run->get_option("--eps"), eps);
    set("t", run->get_option("--t"), t);
    set("t_list", run->get_option("--t-list"), t_list);
    set("decay", run->get_option("--decay"), decay);
    set("seed", run->get_option("--seed"), seed);
    set("samples", run->get_option("--samples"), samples);
    set("n_max", run->get_option("--n-max"), n_max);
    set("a_points", run->get_option("--a-points"), a_points);
    set("cloud_size", run->get_option("--cloud-size"), cloud_size);
    set("bt_cloud_size", run->get_option("--bt-cloud-size"), bt_cloud_size);
    set("workers", run->get_option("--workers"), workers);
    if (!body_path.empty()) j["body"] = load_config(body_path);
    cfg = chainlab::config_from_json(j);
    if (!out.empty()) cfg.out = out;
    if (cfg.out.empty()) cfg.out = "out/" + cfg.experiment;
  } catch (const std::exception& e) {
    std::cerr << "chainlab: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  }

  if (print_config) {
    std::cout << chainlab::config_to_json(cfg).dump(2) << "\n";
    return 0;
  }

  try {
    const auto result = chainlab::run_experiment(cfg);
    chainlab::write_outputs(result, cfg.out);
    for (const auto& a : result.assertions)
      std::cout << (a.passed ? "PASS " : "FAIL ") << a.id << " " << a.description << " (" << a.detail << ")\n";
    if (result.report.contains("flag")) std::cout << "flag: " << result.report["flag"].get<std::string>() << "\n";
    std::cout << "wrote " << cfg.out << "/report.json, table.csv, plot.svg\n";
    if (!result.passed) {
      for (const auto& a : result.assertions)
        if (!a.passed) std::cerr << "chainlab: assertion failed: " << a.id << ": " << a.description << "\n";
      return kExitFail;
    }
    return 0;
  } catch (const chainlab::InvalidArgument& e) {
    std::cerr << "chainlab: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "chainlab: error: " << e.what() << "\n";
    return kExitFail;
  }
}
