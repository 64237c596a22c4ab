#include "amc/amc.h"

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <new>
#include <string>

#include "amc/benchmarks.hpp"
#include "amc/error.hpp"
#include "amc/harness.hpp"
#include "amc/model_io.hpp"
#include "amc/parser.hpp"
#include "amc/translate.hpp"

struct amc_model {
  amc::Icgs model;
};

struct amc_bundle {
  amc::FormulaBundle bundle;
};

namespace {

thread_local std::string last_error;

amc_status fail(amc_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, mapping exceptions to status codes.
template <class F>
amc_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const amc::ParseError& e) {
    return fail(AMC_ERR_PARSE, e.what());
  } catch (const amc::UnknownNameError& e) {
    return fail(AMC_ERR_UNKNOWN_NAME, e.what());
  } catch (const amc::UnavailableActionError& e) {
    return fail(AMC_ERR_UNAVAILABLE_ACTION, e.what());
  } catch (const amc::TimeoutError& e) {
    return fail(AMC_ERR_TIMEOUT, e.what());
  } catch (const amc::IoError& e) {
    return fail(AMC_ERR_IO, e.what());
  } catch (const amc::InvalidArgumentError& e) {
    return fail(AMC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AMC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AMC_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

amc_status null_arg(const char* what) { return fail(AMC_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

}  // namespace

extern "C" {

const char* amc_last_error(void) { return last_error.c_str(); }

const char* amc_status_name(amc_status status) {
  switch (status) {
    case AMC_OK: return "ok";
    case AMC_ERR_PARSE: return "parse error";
    case AMC_ERR_UNKNOWN_NAME: return "unknown name";
    case AMC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AMC_ERR_UNAVAILABLE_ACTION: return "unavailable action";
    case AMC_ERR_TIMEOUT: return "timeout";
    case AMC_ERR_IO: return "i/o error";
    case AMC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void amc_string_free(char* s) { std::free(s); }

amc_status amc_model_load(const char* path, amc_model** out) {
  if (!path || !out) return null_arg("argument");
  return guarded([&] {
    *out = new amc_model{amc::load_model(path)};
    return AMC_OK;
  });
}

amc_status amc_model_parse(const char* text, amc_model** out) {
  if (!text || !out) return null_arg("argument");
  return guarded([&] {
    *out = new amc_model{amc::parse_model(text)};
    return AMC_OK;
  });
}

void amc_model_free(amc_model* model) { delete model; }

amc_status amc_model_export(const amc_model* model, char** out_text) {
  if (!model || !out_text) return null_arg("argument");
  return guarded([&] {
    *out_text = dup(amc::export_model(model->model));
    return AMC_OK;
  });
}

amc_status amc_model_save(const amc_model* model, const char* path) {
  if (!model || !path) return null_arg("argument");
  return guarded([&] {
    amc::save_model(model->model, path);
    return AMC_OK;
  });
}

size_t amc_model_num_states(const amc_model* model) { return model ? model->model.num_states() : 0; }
size_t amc_model_num_agents(const amc_model* model) { return model ? model->model.num_agents() : 0; }

amc_status amc_model_validate(const amc_model* model, char** out_report, size_t* out_count) {
  if (!model || !out_report || !out_count) return null_arg("argument");
  return guarded([&] {
    auto violations = amc::validate(model->model);
    std::string text;
    for (const auto& v : violations) text += std::string(amc::to_string(v.kind)) + ": " + v.message + "\n";
    for (const auto& w : model->model.warnings()) text += "warning: " + w + "\n";
    *out_count = violations.size();
    *out_report = dup(text);
    return AMC_OK;
  });
}

amc_status amc_bundle_load(const char* path, amc_bundle** out) {
  if (!path || !out) return null_arg("argument");
  return guarded([&] {
    *out = new amc_bundle{amc::load_bundle(path)};
    return AMC_OK;
  });
}

amc_status amc_bundle_parse(const char* text, amc_bundle** out) {
  if (!text || !out) return null_arg("argument");
  return guarded([&] {
    *out = new amc_bundle{amc::parse_bundle(text)};
    return AMC_OK;
  });
}

void amc_bundle_free(amc_bundle* bundle) { delete bundle; }

amc_status amc_bundle_export(const amc_bundle* bundle, char** out_text) {
  if (!bundle || !out_text) return null_arg("argument");
  return guarded([&] {
    *out_text = dup(amc::export_bundle(bundle->bundle));
    return AMC_OK;
  });
}

amc_status amc_bundle_save(const amc_bundle* bundle, const char* path) {
  if (!bundle || !path) return null_arg("argument");
  return guarded([&] {
    amc::save_bundle(bundle->bundle, path);
    return AMC_OK;
  });
}

void amc_check_options_init(amc_check_options* options) {
  if (!options) return;
  options->engine = AMC_ENGINE_AEMC;
  options->next = AMC_NEXT_SUBJECTIVE;
  options->state = nullptr;
  options->timeout = 0;
  options->jobs = 1;
  options->bundle = nullptr;
}

amc_status amc_check(const amc_model* model, const char* formula, const amc_check_options* options,
                     amc_result* out, char** out_report) {
  if (!model || !formula || !out) return null_arg("argument");
  amc_check_options defaults;
  amc_check_options_init(&defaults);
  const amc_check_options& o = options ? *options : defaults;
  return guarded([&] {
    const amc::Icgs& m = model->model;
    amc::StateId q;
    if (o.state) {
      q = m.state(o.state);
    } else if (m.initial_state()) {
      q = *m.initial_state();
    } else {
      throw amc::InvalidArgumentError("the model declares no initial state; give one explicitly");
    }
    std::string text = formula;
    amc::AliasMap aliases;
    std::string label;
    if (o.bundle) {
      aliases = o.bundle->bundle.aliases;
      label = o.bundle->bundle.label;
      bool is_aemc = false;
      if (const std::string* named = o.bundle->bundle.find(text, &is_aemc)) {
        if (is_aemc && o.engine == AMC_ENGINE_ATLIR)
          throw amc::InvalidArgumentError("'" + text + "' is an AEMC formula; the atlir engine needs ATL");
        text = *named;
      }
    }
    amc::CheckRequest req;
    req.engine = o.engine == AMC_ENGINE_ATLIR ? amc::Engine::Atlir : amc::Engine::Aemc;
    req.variant = o.next == AMC_NEXT_OBJECTIVE ? amc::NextVariant::Objective : amc::NextVariant::SubjectiveUniform;
    req.timeout = o.timeout > 0 ? o.timeout : 0;
    req.jobs = o.jobs ? o.jobs : 1;
    amc::CheckReport r = amc::run_check(m, q, text, req, aliases);
    r.instance = label;
    if (text != formula) r.formula = std::string(formula) + " = " + text;
    out->truth = r.timeout ? -1 : (r.truth.value_or(false) ? 1 : 0);
    out->timeout = r.timeout ? 1 : 0;
    out->sat_count = r.sat_count ? static_cast<long long>(*r.sat_count) : -1;
    out->iterations = r.iterations ? static_cast<long long>(*r.iterations) : -1;
    out->applications = r.applications ? static_cast<long long>(*r.applications) : -1;
    out->strategies_examined = r.strategies_examined ? static_cast<long long>(*r.strategies_examined) : -1;
    out->fixpoint_checks_ok = r.fixpoint_checks_ok ? 1 : 0;
    out->wall_time = r.wall_time;
    if (out_report) *out_report = dup("state: " + m.state_name(q) + "\n" + amc::describe(r));
    return AMC_OK;
  });
}

amc_status amc_translate(const char* atl_formula, char** out_text) {
  if (!atl_formula || !out_text) return null_arg("argument");
  return guarded([&] {
    *out_text = dup(amc::to_string(amc::translate_aemc(amc::parse_atl(atl_formula))));
    return AMC_OK;
  });
}

amc_status amc_bench_generate(const char* name, const char* config, amc_model** out_model,
                              amc_bundle** out_bundle) {
  if (!name || !out_model) return null_arg("argument");
  return guarded([&] {
    amc::BenchmarkInstance inst = amc::generate_benchmark(name, config ? config : "");
    if (out_bundle) *out_bundle = new amc_bundle{inst.bundle()};
    *out_model = new amc_model{std::move(inst.model)};
    return AMC_OK;
  });
}

amc_status amc_run_plan(const char* plan_text, double timeout, unsigned jobs, const char* format,
                        amc_progress_fn progress, void* user, char** out_text) {
  if (!plan_text || !out_text) return null_arg("argument");
  return guarded([&] {
    auto fmt = amc::parse_report_format(format ? format : "csv");
    if (!fmt) throw amc::InvalidArgumentError("unknown report format '" + std::string(format) + "'");
    amc::RunOptions o;
    o.timeout = timeout > 0 ? timeout : amc::kDefaultTimeout;
    o.jobs = jobs ? jobs : 1;
    std::mutex mu;
    if (progress)
      o.progress = [&](const amc::CheckReport& r) {
        std::string csv = amc::render({r}, amc::ReportFormat::Csv);
        std::string line = csv.substr(csv.find('\n') + 1);
        if (!line.empty() && line.back() == '\n') line.pop_back();
        std::lock_guard<std::mutex> lock(mu);
        progress(line.c_str(), user);
      };
    auto reports = amc::run_matrix(amc::parse_plan(plan_text), o);
    *out_text = dup(amc::render(reports, *fmt));
    return AMC_OK;
  });
}

}  // extern "C"
