#pragma once

// Experiment matrices: run (benchmark x formula x engine x variant) cells
// under a wall-clock budget and render the reports.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amc/aemc_checker.hpp"
#include "amc/benchmarks.hpp"

namespace amc {

enum class Engine { Atlir, Aemc };
const char* to_string(Engine e);
std::optional<Engine> parse_engine(std::string_view text);

struct CheckReport {
  std::string instance;
  std::string formula;
  Engine engine = Engine::Aemc;
  std::optional<NextVariant> variant;  // aemc only
  std::optional<bool> truth;           // absent on timeout
  std::optional<std::size_t> sat_count;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> applications;
  std::optional<std::uint64_t> strategies_examined;  // atlir only
  double wall_time = 0.0;
  bool timeout = false;

  // Not part of the rendered tables.
  std::string witness;
  bool fixpoint_checks_ok = true;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

struct CheckRequest {
  Engine engine = Engine::Aemc;
  NextVariant variant = NextVariant::SubjectiveUniform;
  double timeout = 0;  // seconds; 0 means none
  unsigned jobs = 1;
};

// Checks a formula at state q. `text` is parsed as ATL for atlir; for aemc it
// is parsed as AEMC, or as ATL and then translated. Timing covers parsing
// and checking. A timeout yields a report with the timeout flag set.
CheckReport run_check(const Icgs& model, StateId q, std::string_view text, const CheckRequest& request,
                      const AliasMap& aliases = {});

struct PlanCell {
  std::string bench;
  std::string config;
  std::vector<std::string> formulas;
  std::vector<Engine> engines;
  std::vector<NextVariant> variants = {NextVariant::SubjectiveUniform};
};

// "[cell]" blocks with keys bench, config, formulas, engines and next.
std::vector<PlanCell> parse_plan(std::string_view text);

inline constexpr double kDefaultTimeout = 7200;

struct RunOptions {
  double timeout = kDefaultTimeout;  // per report
  unsigned jobs = 1;                 // cells run in parallel
  // Called after every finished report, from the worker that produced it.
  std::function<void(const CheckReport&)> progress;
};

// One report per (formula, engine, variant) of every cell, in plan order.
// Unknown benchmarks or formulas throw before anything runs.
std::vector<CheckReport> run_matrix(const std::vector<PlanCell>& plan, const RunOptions& options = {});

enum class ReportFormat { Csv, Table };
std::optional<ReportFormat> parse_report_format(std::string_view text);
std::string render(const std::vector<CheckReport>& reports, ReportFormat format);
// Inverse of render(..., Csv).
std::vector<CheckReport> parse_csv(std::string_view text);

// key: value lines for a single check, witness included.
std::string describe(const CheckReport& r);

}  // namespace amc
