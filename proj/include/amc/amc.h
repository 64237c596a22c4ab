#ifndef AMC_AMC_H
#define AMC_AMC_H

/* C interface of libamc: model checking of ATL_ir formulas and of their
 * alternating epistemic mu-calculus translations over explicit models.
 *
 * Functions return an amc_status; on failure amc_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** parameters are owned by the caller and are
 * released with amc_string_free(). */

#include <stddef.h>

#if defined(_WIN32)
#define AMC_API __declspec(dllexport)
#else
#define AMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amc_status {
  AMC_OK = 0,
  AMC_ERR_PARSE = 1,
  AMC_ERR_UNKNOWN_NAME = 2,
  AMC_ERR_INVALID_ARGUMENT = 3,
  AMC_ERR_UNAVAILABLE_ACTION = 4,
  AMC_ERR_TIMEOUT = 5,
  AMC_ERR_IO = 6,
  AMC_ERR_INTERNAL = 7
} amc_status;

typedef struct amc_model amc_model;
typedef struct amc_bundle amc_bundle;

AMC_API const char* amc_last_error(void);
AMC_API const char* amc_status_name(amc_status status);
AMC_API void amc_string_free(char* s);

/* Models */
AMC_API amc_status amc_model_load(const char* path, amc_model** out);
AMC_API amc_status amc_model_parse(const char* text, amc_model** out);
AMC_API void amc_model_free(amc_model* model);
AMC_API amc_status amc_model_export(const amc_model* model, char** out_text);
AMC_API amc_status amc_model_save(const amc_model* model, const char* path);
AMC_API size_t amc_model_num_states(const amc_model* model);
AMC_API size_t amc_model_num_agents(const amc_model* model);
/* One violation per line; *out_count receives their number (0 for a valid
 * model). Import warnings are reported as lines starting with "warning:". */
AMC_API amc_status amc_model_validate(const amc_model* model, char** out_report, size_t* out_count);

/* Formula bundles: named formulas and coalition aliases for a model. */
AMC_API amc_status amc_bundle_load(const char* path, amc_bundle** out);
AMC_API amc_status amc_bundle_parse(const char* text, amc_bundle** out);
AMC_API void amc_bundle_free(amc_bundle* bundle);
AMC_API amc_status amc_bundle_export(const amc_bundle* bundle, char** out_text);
AMC_API amc_status amc_bundle_save(const amc_bundle* bundle, const char* path);

typedef enum amc_engine { AMC_ENGINE_ATLIR = 0, AMC_ENGINE_AEMC = 1 } amc_engine;
typedef enum amc_next { AMC_NEXT_SUBJECTIVE = 0, AMC_NEXT_OBJECTIVE = 1 } amc_next;

typedef struct amc_check_options {
  amc_engine engine;
  amc_next next;
  const char* state;         /* NULL: the model's initial state */
  double timeout;            /* seconds, <= 0 for none */
  unsigned jobs;             /* threads for the aemc one-step operator */
  const amc_bundle* bundle;  /* aliases and named formulas, may be NULL */
} amc_check_options;

AMC_API void amc_check_options_init(amc_check_options* options);

typedef struct amc_result {
  int truth;   /* 1 true, 0 false, -1 timeout */
  int timeout;
  long long sat_count;            /* -1 when not applicable */
  long long iterations;           /* -1 when not applicable */
  long long applications;         /* -1 when not applicable */
  long long strategies_examined;  /* -1 when not applicable */
  int fixpoint_checks_ok;
  double wall_time;
} amc_result;

/* `formula` is formula text, or the name of a formula in options->bundle.
 * For the aemc engine ATL text is translated first. out_report, if not NULL,
 * receives a key: value description including any witness strategy. */
AMC_API amc_status amc_check(const amc_model* model, const char* formula, const amc_check_options* options,
                     amc_result* out, char** out_report);

/* The fixpoint translation of an ATL formula, as text. */
AMC_API amc_status amc_translate(const char* atl_formula, char** out_text);

/* name: intersection | castles | tianji | modtianji; config as in the CLI. */
AMC_API amc_status amc_bench_generate(const char* name, const char* config, amc_model** out_model,
                              amc_bundle** out_bundle);

/* Called with one CSV line per finished report; may run on worker threads. */
typedef void (*amc_progress_fn)(const char* csv_line, void* user);

/* Runs a plan file's text. format: "csv" or "table". */
AMC_API amc_status amc_run_plan(const char* plan_text, double timeout, unsigned jobs, const char* format,
                        amc_progress_fn progress, void* user, char** out_text);

#ifdef __cplusplus
}
#endif

#endif
