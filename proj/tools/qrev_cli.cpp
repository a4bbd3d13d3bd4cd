// Campaign runner: `qrev verify <suite|all>`, `qrev sweep bosonic`,
// `qrev report merge`.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qrev/campaign.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct VerifyArgs {
  std::string suite = "all";
  std::string config_file;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<int> dims;
  double tol = 0.0;
  int quad_nodes = 0;
  double quad_halfwidth = 0.0;
  std::string out;
  std::string format;
  int jobs = 1;
  bool timing = false;
};

qrev::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qrev::ConfigError("cannot open '" + path + "'");
  try {
    return qrev::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qrev::ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qrev::ConfigError("cannot write '" + path + "'");
  out << text;
}

int run_verify(const VerifyArgs& args, const CLI::App& cmd) {
  qrev::CampaignConfig config;
  if (!args.config_file.empty()) qrev::apply_config_json(read_json(args.config_file), config);
  // Explicit flags override the config file.
  if (args.suite != "all") {
    config.suites = {args.suite};
  } else if (cmd.count("suite")) {
    config.suites = qrev::suite_names();
  }
  if (cmd.count("--seed")) config.seed = args.seed;
  if (cmd.count("--trials")) config.trials = args.trials;
  if (cmd.count("--dims")) config.dims = args.dims;
  if (cmd.count("--tol")) config.tol = args.tol;
  if (cmd.count("--quad-nodes")) config.quad.nodes = args.quad_nodes;
  if (cmd.count("--quad-halfwidth")) config.quad.half_width = args.quad_halfwidth;
  if (cmd.count("--out")) config.out = args.out;
  if (cmd.count("--format")) config.format = args.format;
  if (cmd.count("--jobs")) config.jobs = args.jobs;
  config.timing = args.timing;
  config.validate();

  const qrev::CampaignResult result = qrev::run_campaign(config);
  if (config.format == "csv") {
    std::ostringstream os;
    qrev::write_csv(os, result);
    emit(config.out, os.str());
  } else {
    emit(config.out, qrev::campaign_json(config, result).dump(2) + "\n");
  }

  const qrev::Json summary = qrev::summarize(result);
  for (const auto& [suite, s] : summary["suites"].items()) {
    std::cerr << suite << ": " << s["passed"] << "/" << s["checks"]
              << " checks hold, worst slack " << s["worst_slack"] << " ("
              << s["worst_check"].get<std::string>() << ")\n";
  }
  std::cerr << "wall time " << result.wall_seconds << " s\n";
  if (result.all_hold()) return 0;
  for (const auto& line : qrev::reproducers(config, result)) std::cerr << line << '\n';
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of entropy-gain, recovery and information-gain bounds"};
  app.require_subcommand(1);

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->add_option("suite", v.suite, "Suite name or 'all'")
      ->check(CLI::IsMember([] {
        auto names = qrev::suite_names();
        names.push_back("all");
        return names;
      }()));
  verify->add_option("--config", v.config_file, "JSON config file (flags win)");
  verify->add_option("--seed", v.seed, "Master seed");
  verify->add_option("--trials", v.trials, "Trials per random family");
  verify->add_option("--dims", v.dims, "Local dimensions, comma separated")->delimiter(',');
  verify->add_option("--tol", v.tol, "Tolerance applied to every check");
  verify->add_option("--quad-nodes", v.quad_nodes, "Quadrature node count (odd)");
  verify->add_option("--quad-halfwidth", v.quad_halfwidth, "Quadrature half-width T");
  verify->add_option("--out", v.out, "Report path (default: stdout)");
  verify->add_option("--format", v.format, "json or csv");
  verify->add_option("--jobs", v.jobs, "Worker threads");
  verify->add_flag("--timing", v.timing, "Include wall time in the JSON summary");

  qrev::SweepOptions sweep_options;
  std::string sweep_target;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep emitting CSV");
  sweep->add_option("target", sweep_target, "Only 'bosonic'")
      ->required()
      ->check(CLI::IsMember({"bosonic"}));
  sweep->add_option("--n-max", sweep_options.n_max, "Highest Fock level");
  sweep->add_option("--guard", sweep_options.guard, "Guard band width");
  sweep->add_option("--etas", sweep_options.etas, "Loss transmissivities")->delimiter(',');
  sweep->add_option("--gains", sweep_options.gains, "Amplifier gains")->delimiter(',');
  sweep->add_option("--trunc-tol", sweep_options.trunc_tol, "Truncation tolerance");
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout)");

  std::string report_action;
  std::vector<std::string> report_inputs;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Report utilities");
  report->add_option("action", report_action, "Only 'merge'")
      ->required()
      ->check(CLI::IsMember({"merge"}));
  report->add_option("inputs", report_inputs, "JSON reports")->required();
  report->add_option("--out", report_out, "Merged report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(v, *verify);
    if (sweep->parsed()) {
      const qrev::Checks rows = qrev::bosonic_grid(sweep_options);
      std::ostringstream os;
      qrev::write_sweep_csv(os, rows);
      emit(sweep_out, os.str());
      return qrev::all_hold(rows) ? 0 : kExitFailure;
    }
    if (report->parsed()) {
      std::vector<qrev::Json> docs;
      for (const auto& path : report_inputs) docs.push_back(read_json(path));
      const qrev::Json merged = qrev::merge_reports(docs);
      emit(report_out, merged.dump(2) + "\n");
      return merged["summary"]["all_hold"].get<bool>() ? 0 : kExitFailure;
    }
  } catch (const qrev::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qrev::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
