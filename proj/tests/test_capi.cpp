#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "amc/amc.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  amc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("translate") {
  char* out = nullptr;
  REQUIRE(amc_translate("<<A>> G p", &out) == AMC_OK);
  CHECK(take(out) == "nu Z . (p & <<A>> X Z)");
  CHECK(amc_translate("<<A>> G", &out) == AMC_ERR_PARSE);
  CHECK(std::string(amc_last_error()).find("1:") == 0);
  CHECK(amc_translate(nullptr, &out) == AMC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("generate and check the intersection") {
  amc_model* m = nullptr;
  amc_bundle* b = nullptr;
  REQUIRE(amc_bench_generate("intersection", "", &m, &b) == AMC_OK);
  CHECK(amc_model_num_states(m) == 5);
  CHECK(amc_model_num_agents(m) == 2);

  amc_check_options o;
  amc_check_options_init(&o);
  o.engine = AMC_ENGINE_ATLIR;
  o.state = "q_oo";
  amc_result r;
  char* report = nullptr;
  REQUIRE(amc_check(m, "<<1>> G !collision", &o, &r, &report) == AMC_OK);
  CHECK(r.truth == 1);
  CHECK(r.sat_count == -1);
  CHECK(r.strategies_examined > 0);
  CHECK(take(report).find("witness: 1:") != std::string::npos);

  o.engine = AMC_ENGINE_AEMC;
  o.bundle = b;
  REQUIRE(amc_check(m, "crash", &o, &r, nullptr) == AMC_OK);
  CHECK(r.truth == 0);
  CHECK(r.sat_count == 1);
  CHECK(r.fixpoint_checks_ok == 1);

  o.engine = AMC_ENGINE_ATLIR;
  CHECK(amc_check(m, "crashp", &o, &r, nullptr) == AMC_ERR_INVALID_ARGUMENT);
  o.state = "nowhere";
  CHECK(amc_check(m, "crash", &o, &r, nullptr) == AMC_ERR_UNKNOWN_NAME);

  char* text = nullptr;
  REQUIRE(amc_model_export(m, &text) == AMC_OK);
  std::string exported = take(text);
  amc_model* back = nullptr;
  REQUIRE(amc_model_parse(exported.c_str(), &back) == AMC_OK);
  REQUIRE(amc_model_export(back, &text) == AMC_OK);
  CHECK(take(text) == exported);

  size_t count = 99;
  REQUIRE(amc_model_validate(back, &text, &count) == AMC_OK);
  CHECK(count == 0);
  take(text);

  amc_model_free(back);
  amc_bundle_free(b);
  amc_model_free(m);
}

TEST_CASE("errors map to status codes") {
  amc_model* m = nullptr;
  CHECK(amc_model_load("/nonexistent/file.icgs", &m) == AMC_ERR_IO);
  CHECK(amc_model_parse("[agents]\n[bogus]\n", &m) == AMC_ERR_PARSE);
  amc_bundle* b = nullptr;
  CHECK(amc_bench_generate("chess", "", &m, &b) == AMC_ERR_UNKNOWN_NAME);
  CHECK(amc_bench_generate("castles", "0,1,1", &m, &b) == AMC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(amc_status_name(AMC_ERR_TIMEOUT)) == "timeout");
}

TEST_CASE("plans") {
  char* out = nullptr;
  int lines = 0;
  auto progress = [](const char*, void* user) { ++*static_cast<int*>(user); };
  REQUIRE(amc_run_plan("[cell]\nbench = intersection\nformulas = safe, crash\nengines = atlir, aemc\n", 60, 2,
                       "csv", progress, &lines, &out) == AMC_OK);
  std::string csv = take(out);
  CHECK(lines == 4);
  CHECK(csv.find("intersection,safe,atlir,,true,") != std::string::npos);
  CHECK(amc_run_plan("[cell]\nbench = intersection\nformulas = safe\n", 60, 1, "xml", nullptr, nullptr, &out) ==
        AMC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("timeouts") {
  amc_model* m = nullptr;
  amc_bundle* b = nullptr;
  REQUIRE(amc_bench_generate("castles", "2,2,2", &m, &b) == AMC_OK);
  amc_check_options o;
  amc_check_options_init(&o);
  o.bundle = b;
  o.timeout = 1e-6;
  amc_result r;
  REQUIRE(amc_check(m, "psi1p", &o, &r, nullptr) == AMC_OK);
  CHECK(r.timeout == 1);
  CHECK(r.truth == -1);
  amc_bundle_free(b);
  amc_model_free(m);
}
