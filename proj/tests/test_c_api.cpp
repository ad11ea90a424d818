/* Copyright 2026 The spintomo Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "spintomo/spintomo.h"

namespace {

const char* kReferenceSpec = R"({"model": "xx", "n_spins": 8,
  "couplings": {"J": [1.40, 1.48, 1.06, 0.80, 1.36, 0.97, 0.66]}})";

std::string take(char* s) {
  std::string out = s ? s : "";
  spintomo_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(spintomo_version()) == "0.1.0");
  CHECK(std::string(spintomo_status_name(SPINTOMO_ERR_INVERSION)) == "inversion_error");
  CHECK(spintomo_status_is_input_error(SPINTOMO_ERR_SPEC));
  CHECK_FALSE(spintomo_status_is_input_error(SPINTOMO_ERR_RESOLUTION));
}

TEST_CASE("bad spec reports a message") {
  spintomo_spec* spec = nullptr;
  CHECK(spintomo_spec_from_json(R"({"model": "xx", "n_spins": 1, "couplings": {"J": []}})", &spec) ==
        SPINTOMO_ERR_SPEC);
  CHECK(spec == nullptr);
  CHECK(std::string(spintomo_last_error()).find("at least 2") != std::string::npos);
  CHECK(spintomo_spec_from_json(nullptr, &spec) == SPINTOMO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("simulate and run through handles") {
  spintomo_spec* spec = nullptr;
  REQUIRE(spintomo_spec_from_json(kReferenceSpec, &spec) == SPINTOMO_OK);
  CHECK(spintomo_spec_has_couplings(spec));
  CHECK(spintomo_spec_probe_count(spec) == 1);
  CHECK(std::string(spintomo_spec_probe_observable(spec, 0)) == "X1");

  spintomo_config* cfg = nullptr;
  REQUIRE(spintomo_config_create(&cfg) == SPINTOMO_OK);
  CHECK(spintomo_config_set_step(cfg, -1.0) == SPINTOMO_ERR_SPEC);
  CHECK(spintomo_config_set_initializer(cfg, "nope") == SPINTOMO_ERR_SPEC);

  spintomo_trace* tr = nullptr;
  REQUIRE(spintomo_simulate(spec, cfg, 0, &tr) == SPINTOMO_OK);
  CHECK(spintomo_trace_size(tr) == 200);
  double t = -1.0, v = 0.0;
  REQUIRE(spintomo_trace_sample(tr, 0, &t, &v) == SPINTOMO_OK);
  CHECK(t == 0.0);
  CHECK(v == 1.0);
  CHECK(spintomo_trace_sample(tr, 200, &t, &v) == SPINTOMO_ERR_INVALID_ARGUMENT);

  // CSV plus sidecar reproduce the trace for ingest.
  char* out = nullptr;
  REQUIRE(spintomo_trace_to_csv(tr, &out) == SPINTOMO_OK);
  const std::string text = take(out);
  REQUIRE(spintomo_trace_metadata_json(tr, &out) == SPINTOMO_OK);
  const std::string meta = take(out);
  spintomo_trace* back = nullptr;
  REQUIRE(spintomo_trace_from_csv(text.c_str(), meta.c_str(), &back) == SPINTOMO_OK);

  spintomo_result* direct = nullptr;
  REQUIRE(spintomo_run(spec, cfg, &direct) == SPINTOMO_OK);
  REQUIRE(spintomo_result_param_count(direct) == 7);
  const char* name = nullptr;
  double est = 0.0, truth = 0.0;
  int has_truth = 0;
  REQUIRE(spintomo_result_param(direct, 6, &name, &est, &truth, &has_truth) == SPINTOMO_OK);
  CHECK(std::string(name) == "J_7");
  CHECK(has_truth == 1);
  CHECK(truth == 0.66);
  CHECK(std::abs(est - 0.660894) <= 1e-3);
  CHECK(spintomo_result_chain_count(direct) == 1);
  CHECK(spintomo_result_warning_count(direct) == 0);

  const spintomo_trace* traces[] = {back};
  spintomo_result* ingested = nullptr;
  REQUIRE(spintomo_run_traces(nullptr, traces, 1, cfg, &ingested) == SPINTOMO_OK);
  REQUIRE(spintomo_result_param(ingested, 6, &name, &est, &truth, &has_truth) == SPINTOMO_OK);
  CHECK(has_truth == 0);
  CHECK(std::abs(est - 0.660894) <= 1e-3);

  REQUIRE(spintomo_result_compare_json(direct, spec, &out) == SPINTOMO_OK);
  CHECK(take(out).find("max_abs") != std::string::npos);
  REQUIRE(spintomo_result_overlay_csv(direct, 0, &out) == SPINTOMO_OK);
  CHECK(take(out).rfind("t,measured,fitted", 0) == 0);
  CHECK(spintomo_result_fit_report_json(direct, 3, &out) == SPINTOMO_ERR_INVALID_ARGUMENT);

  spintomo_result_free(ingested);
  spintomo_result_free(direct);
  spintomo_trace_free(back);
  spintomo_trace_free(tr);
  spintomo_config_free(cfg);
  spintomo_spec_free(spec);
}

TEST_CASE("pipeline errors name their stage") {
  spintomo_spec* spec = nullptr;
  REQUIRE(spintomo_spec_from_json(kReferenceSpec, &spec) == SPINTOMO_OK);
  spintomo_config* cfg = nullptr;
  REQUIRE(spintomo_config_create(&cfg) == SPINTOMO_OK);
  // Four samples cannot resolve four cosines.
  REQUIRE(spintomo_config_set_window(cfg, 10.0 * M_PI / 25.0) == SPINTOMO_OK);
  spintomo_result* r = nullptr;
  CHECK(spintomo_run(spec, cfg, &r) == SPINTOMO_ERR_RESOLUTION);
  CHECK(r == nullptr);
  CHECK(std::string(spintomo_last_error_stage()) == "fit");
  spintomo_config_free(cfg);
  spintomo_spec_free(spec);
}
