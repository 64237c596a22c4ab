// amc: command-line front end over the libamc C interface.
//
// Exit codes: 0 formula true or task done, 1 formula false, 2 usage or input
// error, 3 timeout of a single check.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "amc/amc.h"

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kTimeout = 3;

int report_error(amc_status s) {
  std::cerr << "amc: " << amc_status_name(s) << ": " << amc_last_error() << "\n";
  return s == AMC_ERR_TIMEOUT ? kTimeout : kInputError;
}

// Owns a string handed out by the library.
struct Text {
  char* p = nullptr;
  ~Text() { amc_string_free(p); }
};

struct Model {
  amc_model* p = nullptr;
  ~Model() { amc_model_free(p); }
};

struct Bundle {
  amc_bundle* p = nullptr;
  ~Bundle() { amc_bundle_free(p); }
};

std::string read_file(const std::string& path, bool& ok) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  ok = f != nullptr;
  if (!f) return {};
  std::string s;
  char buf[65536];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, f)) > 0;) s.append(buf, n);
  std::fclose(f);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for ATL_ir and its fixpoint (AEMC) translations", "amc"};
  app.require_subcommand(1);

  // check
  std::string model_path, formula, semantics, next = "subjective", state, bundle_path;
  double check_timeout = 7200;
  unsigned check_jobs = 1;
  auto* check = app.add_subcommand("check", "Check a formula at a state of a model");
  check->add_option("--model", model_path, "Model file")->required();
  check->add_option("--formula", formula, "Formula text, or a formula name from --bundle")->required();
  check->add_option("--semantics", semantics, "atlir or aemc")
      ->required()
      ->check(CLI::IsMember({"atlir", "aemc"}));
  check->add_option("--next", next, "One-step operator of aemc: objective or subjective")
      ->check(CLI::IsMember({"objective", "subjective", "subjective-uniform"}))
      ->capture_default_str();
  check->add_option("--state", state, "State to check (default: the model's initial state)");
  check->add_option("--bundle", bundle_path, "Formula bundle with coalition aliases and named formulas");
  check->add_option("--timeout", check_timeout, "Seconds before giving up")->capture_default_str();
  check->add_option("--jobs", check_jobs, "Threads for the aemc one-step operator")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // translate
  std::string translate_formula;
  auto* translate = app.add_subcommand("translate", "Print the fixpoint translation of an ATL formula");
  translate->add_option("--formula", translate_formula, "ATL formula")->required();

  // bench
  std::string bench_name, bench_config, bench_model_out, bench_bundle_out;
  auto* bench = app.add_subcommand("bench", "Generate a benchmark model and its formula bundle");
  bench->add_option("--name", bench_name, "intersection, castles, tianji or modtianji")
      ->required()
      ->check(CLI::IsMember({"intersection", "castles", "tianji", "modtianji"}));
  bench->add_option("--config", bench_config, "Workers per castle (e.g. 1,1,2) or number of horses");
  bench->add_option("--model-out", bench_model_out, "Model file to write (default: <name>[_<config>].icgs)");
  bench->add_option("--bundle-out", bench_bundle_out,
                    "Formula bundle to write (default: <name>[_<config>].formulas)");

  // run
  std::string plan_path, run_out, run_format = "csv";
  double run_timeout = 7200;
  unsigned run_jobs = 1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run an experiment plan");
  run->add_option("--plan", plan_path, "Plan file")->required();
  run->add_option("--timeout", run_timeout, "Seconds per check")->capture_default_str();
  run->add_option("--out", run_out, "Report file (default: standard output)");
  run->add_option("--format", run_format, "csv or table")
      ->check(CLI::IsMember({"csv", "table"}))
      ->capture_default_str();
  run->add_option("--jobs", run_jobs, "Cells run in parallel")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_flag("--quiet", quiet, "No progress lines on standard error");

  // validate
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "List the violated model invariants");
  validate->add_option("--model", validate_path, "Model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "amc: " << e.what() << "\n\n";
    CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    std::cerr << failed->help();
    return kInputError;
  }

  if (*check) {
    Model m;
    if (amc_status s = amc_model_load(model_path.c_str(), &m.p)) return report_error(s);
    Bundle b;
    if (!bundle_path.empty())
      if (amc_status s = amc_bundle_load(bundle_path.c_str(), &b.p)) return report_error(s);
    amc_check_options o;
    amc_check_options_init(&o);
    o.engine = semantics == "atlir" ? AMC_ENGINE_ATLIR : AMC_ENGINE_AEMC;
    o.next = next == "objective" ? AMC_NEXT_OBJECTIVE : AMC_NEXT_SUBJECTIVE;
    o.state = state.empty() ? nullptr : state.c_str();
    o.timeout = check_timeout;
    o.jobs = check_jobs;
    o.bundle = b.p;
    amc_result r;
    Text report;
    if (amc_status s = amc_check(m.p, formula.c_str(), &o, &r, &report.p)) return report_error(s);
    std::cout << report.p;
    if (r.timeout) return kTimeout;
    return r.truth == 1 ? kTrue : kFalse;
  }

  if (*translate) {
    Text t;
    if (amc_status s = amc_translate(translate_formula.c_str(), &t.p)) return report_error(s);
    std::cout << t.p << "\n";
    return kTrue;
  }

  if (*bench) {
    std::string stem = bench_name;
    for (char c : bench_config)
      if (c >= '0' && c <= '9') stem += std::string("_") + c;
    if (bench_model_out.empty()) bench_model_out = stem + ".icgs";
    if (bench_bundle_out.empty()) bench_bundle_out = stem + ".formulas";
    Model m;
    Bundle b;
    if (amc_status s = amc_bench_generate(bench_name.c_str(), bench_config.c_str(), &m.p, &b.p))
      return report_error(s);
    if (amc_status s = amc_model_save(m.p, bench_model_out.c_str())) return report_error(s);
    if (amc_status s = amc_bundle_save(b.p, bench_bundle_out.c_str())) return report_error(s);
    std::cout << "model: " << bench_model_out << " (" << amc_model_num_states(m.p) << " states, "
              << amc_model_num_agents(m.p) << " agents)\n"
              << "formulas: " << bench_bundle_out << "\n";
    return kTrue;
  }

  if (*run) {
    bool ok = false;
    std::string plan = read_file(plan_path, ok);
    if (!ok) {
      std::cerr << "amc: cannot read '" << plan_path << "'\n";
      return kInputError;
    }
    Text out;
    auto progress = [](const char* line, void*) { std::cerr << line << std::endl; };
    if (amc_status s = amc_run_plan(plan.c_str(), run_timeout, run_jobs, run_format.c_str(),
                                    quiet ? nullptr : +progress, nullptr, &out.p))
      return report_error(s);
    if (run_out.empty()) {
      std::cout << out.p;
    } else {
      std::FILE* f = std::fopen(run_out.c_str(), "wb");
      if (!f) {
        std::cerr << "amc: cannot write '" << run_out << "'\n";
        return kInputError;
      }
      std::fputs(out.p, f);
      std::fclose(f);
    }
    return kTrue;
  }

  if (*validate) {
    Model m;
    if (amc_status s = amc_model_load(validate_path.c_str(), &m.p)) return report_error(s);
    Text report;
    std::size_t count = 0;
    if (amc_status s = amc_model_validate(m.p, &report.p, &count)) return report_error(s);
    std::cout << report.p;
    if (count == 0) std::cout << "valid\n";
    return count == 0 ? kTrue : kFalse;
  }
  return kInputError;
}
