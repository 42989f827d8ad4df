// Command-line experiment harness. Subcommands:
//   run <config.json>                 one experiment -> trace CSV + report JSON
//   sweep <dir> [--report out.json]   every *.json config in a directory
//   verify <trace.csv> --check <name> self-contained checks on a trace file
//   lowerbound --kind <k> --T <n>     emit a lower-bound instance as CSV
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage/config
// or I/O error. No environment variables are read; everything flows through
// the config files.
#include "olo/driver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <clocale>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

/// Writes the trace/report files named in the config's outputs block.
/// Returns false (with a message on stderr) on I/O failure.
bool write_outputs(const Json& config, const olo::ExperimentResult& res) {
  const auto out = config.find("outputs");
  if (out == config.end()) return true;
  if (const auto t = out->find("trace"); t != out->end()) {
    const std::string path = t->get<std::string>();
    if (!path.empty() && !write_file(path, res.trace_csv)) {
      std::cerr << "error: cannot write trace file " << path << "\n";
      return false;
    }
  }
  if (const auto r = out->find("report"); r != out->end()) {
    const std::string path = r->get<std::string>();
    if (!path.empty() && !write_file(path, res.report.dump(2) + "\n")) {
      std::cerr << "error: cannot write report file " << path << "\n";
      return false;
    }
  }
  return true;
}

int cmd_run(const std::string& config_path) {
  std::string text;
  if (!read_file(config_path, text)) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 2;
  }
  Json config = Json::parse(text, nullptr, false);
  if (config.is_discarded()) {
    std::cerr << "error: " << config_path << " is not valid JSON\n";
    return 2;
  }
  olo::ExperimentResult res;
  try {
    res = olo::run_experiment(config);
  } catch (const olo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!write_outputs(config, res)) return 2;
  std::cout << res.report.dump(2) << "\n";
  return res.all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& dir, const std::string& report_path) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        paths.push_back(entry.path().string());
      }
    }
    if (ec) {
      std::cerr << "error: cannot list directory " << dir << "\n";
      return 2;
    }
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    std::cerr << "error: no *.json config files in " << dir << "\n";
    return 2;
  }
  std::vector<std::pair<std::string, Json>> configs;
  configs.reserve(paths.size());
  for (const std::string& p : paths) {
    std::string text;
    if (!read_file(p, text)) {
      std::cerr << "error: cannot read config file " << p << "\n";
      return 2;
    }
    // Parse failures surface as per-run errors inside the report.
    configs.emplace_back(fs::path(p).filename().string(),
                         Json::parse(text, nullptr, false));
  }
  const olo::SweepResult res = olo::run_sweep(configs);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (res.runs[i].has_value() &&
        !write_outputs(configs[i].second, *res.runs[i])) {
      return 2;
    }
  }
  if (!report_path.empty() &&
      !write_file(report_path, res.report.dump(2) + "\n")) {
    std::cerr << "error: cannot write report file " << report_path << "\n";
    return 2;
  }
  std::cout << res.report.dump(2) << "\n";
  return res.all_pass ? 0 : 1;
}

int cmd_verify(const std::string& trace_path,
               const std::vector<std::string>& checks,
               const std::optional<double>& limit) {
  std::string csv;
  if (!read_file(trace_path, csv)) {
    std::cerr << "error: cannot read trace file " << trace_path << "\n";
    return 2;
  }
  Json results = Json::array();
  bool all_pass = true;
  for (const std::string& check : checks) {
    try {
      Json r = olo::verify_trace_csv(csv, check, limit);
      all_pass = all_pass && r["pass"].get<bool>();
      results.push_back(std::move(r));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  std::cout << results.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

int cmd_lowerbound(const std::string& kind, std::int64_t T, double C,
                   double eps, const std::string& out_path) {
  std::string csv;
  try {
    csv = olo::lowerbound_csv(kind, T, C, eps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (out_path.empty()) {
    std::cout << csv;
    return 0;
  }
  if (!write_file(out_path, csv)) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{
      "Online linear optimization harness: parameter-free, dynamic, "
      "scale-free, and implicit-optimistic learners with verification"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand(
      "run", "Run one experiment from a JSON config file");
  run->add_option("config", run_config, "Experiment config (JSON)")
      ->required();

  std::string sweep_dir;
  std::string sweep_report;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run every *.json config in a directory (sorted by name)");
  sweep->add_option("dir", sweep_dir, "Directory of config files")->required();
  sweep->add_option("--report", sweep_report,
                    "Also write the aggregate report to this file");

  std::string verify_trace;
  std::vector<std::string> verify_checks;
  double verify_limit = 0.0;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run self-contained checks on a trace CSV");
  verify->add_option("trace", verify_trace, "Trace CSV file")->required();
  verify
      ->add_option("--check", verify_checks,
                   "Check to run: ledger, bound, or delta_sum (repeatable)")
      ->required();
  CLI::Option* limit_opt = verify->add_option(
      "--limit", verify_limit, "Limit for the delta_sum check");

  std::string lb_kind;
  std::int64_t lb_T = 0;
  double lb_C = 0.0;
  double lb_eps = 1.0;
  std::string lb_out;
  CLI::App* lb = app.add_subcommand(
      "lowerbound", "Emit a lower-bound gradient/comparator sequence as CSV");
  lb->add_option("--kind", lb_kind, "constrained or unconstrained")
      ->required()
      ->check(CLI::IsMember({"constrained", "unconstrained"}));
  lb->add_option("--T", lb_T, "Horizon")->required();
  lb->add_option("--C", lb_C,
                 "Unconstrained block constant (0 = sqrt(2/pi) default)");
  lb->add_option("--eps", lb_eps, "Unconstrained comparator scale");
  lb->add_option("--out", lb_out, "Write the CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_config);
  if (sweep->parsed()) return cmd_sweep(sweep_dir, sweep_report);
  if (verify->parsed()) {
    std::optional<double> limit;
    if (limit_opt->count() > 0) limit = verify_limit;
    return cmd_verify(verify_trace, verify_checks, limit);
  }
  return cmd_lowerbound(lb_kind, lb_T, lb_C, lb_eps, lb_out);
}
