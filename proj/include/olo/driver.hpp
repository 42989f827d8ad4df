// JSON-configured experiment driver: validates a config against a strict
// schema (unknown keys rejected, errors carry JSON-pointer paths), wires
// adversary -> learner -> regret ledger -> verification checkers, and
// serializes a per-round CSV trace plus a JSON report. All functions are
// pure with respect to the filesystem; file I/O lives in the CLI binary.
#pragma once

#include "olo/core.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace olo {

/// Schema or semantic violation in an experiment config. `path` is the
/// JSON pointer (RFC 6901) of the offending element.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ExperimentResult {
  nlohmann::ordered_json report;  // stable key order, deterministic dump
  std::string trace_csv;          // full file content, '\n' line endings
  bool all_pass = true;           // conjunction over requested checks
  std::vector<Vector> plays;      // kept for cross-run comparisons in sweeps
};

/// Validates and runs one experiment. Throws ConfigError on schema errors;
/// trace columns are exactly
///   t,g_norm,w_norm,play_norm,inst_regret,cum_regret,delta_t,bound_rhs
/// with fields left empty where the algorithm defines no value.
ExperimentResult run_experiment(const nlohmann::ordered_json& config);

struct SweepResult {
  nlohmann::ordered_json report;  // per-run entries plus aggregate block
  // One entry per config, in input order; empty when that run errored
  // (the error text is in the report instead).
  std::vector<std::optional<ExperimentResult>> runs;
  bool all_pass = false;  // every run succeeded and passed its checks
};

/// Runs each (name, config) pair independently; per-run errors are caught
/// into the report rather than thrown. Throws std::invalid_argument on an
/// empty list.
SweepResult run_sweep(
    const std::vector<std::pair<std::string, nlohmann::ordered_json>>& configs);

/// Self-contained checks over a trace CSV produced by run_experiment:
///   "ledger"    cum_regret is the compensated running sum of inst_regret,
///   "bound"     cum_regret <= bound_rhs + 1e-9 t wherever bound_rhs is set,
///   "delta_sum" sum of delta_t <= limit + 1e-9 T (limit required).
/// Returns {"check", "pass", "lhs", "rhs", "witness_t", "detail"}. Throws
/// std::invalid_argument on an unknown check name or a missing limit, and
/// std::runtime_error on malformed CSV.
nlohmann::ordered_json verify_trace_csv(const std::string& csv_content,
                                        const std::string& check,
                                        std::optional<double> limit = {});

/// Lower-bound instance as CSV with columns t,g,u. kind is "constrained" or
/// "unconstrained"; C and eps only affect the unconstrained construction
/// (C = 0 means the documented default constant).
std::string lowerbound_csv(const std::string& kind, std::int64_t T, double C,
                           double eps);

}  // namespace olo
