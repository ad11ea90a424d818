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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "oracles.hpp"
#include "spintomo/io.hpp"

using namespace spintomo;
using nlohmann::json;

TEST_CASE("spec JSON round trip") {
  const char* text = R"({"model": "xy", "n_spins": 3,
    "couplings": {"JX": [1.1, 0.7], "JY": [0.8, 1.4]}})";
  const auto s = io::spec_from_json(text);
  CHECK(s.model == Model::XY);
  CHECK(s.n_spins == 3);
  CHECK(s.jy[1] == 1.4);
  const auto again = io::spec_from_json(io::spec_to_json(s));
  CHECK(again.jx == s.jx);
  CHECK(again.jy == s.jy);
  CHECK(io::json_has_couplings(text));
  CHECK_FALSE(io::json_has_couplings(R"({"model": "xx", "n_spins": 4})"));
  CHECK(io::layout_from_json(R"({"model": "ising_transverse", "n_spins": 4})").model ==
        Model::IsingTransverse);
}

TEST_CASE("spec JSON errors") {
  CHECK_THROWS_AS(io::spec_from_json("{not json"), IoError);
  CHECK_THROWS_AS(io::spec_from_json(R"({"model": "heisenberg", "n_spins": 3, "couplings": {}})"),
                  SpecError);
  CHECK_THROWS_AS(io::spec_from_json(R"({"model": "xx", "n_spins": 3, "couplings": {"J": [1.0]}})"),
                  SpecError);
  CHECK_THROWS_AS(io::spec_from_json(R"({"model": "xx", "n_spins": 3, "couplings": {"J": [1.0, -1.0]}})"),
                  SpecError);
  CHECK_THROWS_AS(io::spec_from_json(R"({"model": "xx", "n_spins": "three"})"), Error);
}

TEST_CASE("config JSON accepts either key style and layers over a base") {
  TomographyConfig base;
  base.n_terms = 3;
  const auto c = io::config_from_json(R"({"step": 0.1, "taylor-order": 9, "noise_sigma": 0.02,
    "seed": 5, "initializer": "periodogram", "simulator": "statevector",
    "bulk": {"kind": "random_pure", "seed": 11, "samples": 4}})", base);
  CHECK(c.sample_step == 0.1);
  CHECK(c.window == doctest::Approx(8.0 * M_PI));
  CHECK(c.taylor_order == 9);
  CHECK(c.n_terms == 3);
  REQUIRE(c.noise.has_value());
  CHECK(c.noise->sigma == 0.02);
  CHECK(c.noise->seed == 5);
  CHECK(c.initializer == Initializer::Periodogram);
  CHECK(c.simulator == Simulator::Statevector);
  CHECK(c.bulk.kind == BulkState::Kind::RandomPure);
  CHECK(c.bulk.samples == 4);

  const auto again = io::config_from_json(io::config_to_json(c));
  CHECK(again.sample_step == c.sample_step);
  CHECK(again.taylor_order == c.taylor_order);
  CHECK(again.initializer == c.initializer);
  CHECK(again.bulk.seed == 11);

  CHECK_THROWS_AS(io::config_from_json(R"({"initializer": "magic"})"), SpecError);
  CHECK_THROWS_AS(io::config_from_json(R"({"step": "fast"})"), Error);
}

TEST_CASE("trace CSV round trip is exact") {
  const auto tr = spectral_signal(oracle::chain_of(oracle::kReferenceCouplings), sample_times(M_PI / 25.0, 8.0 * M_PI));
  const auto csv = io::trace_to_csv(tr);
  CHECK(csv.rfind("t,value\n", 0) == 0);
  const auto back = io::trace_from_csv(csv, tr.probe);
  REQUIRE(back.size() == 200);
  CHECK(back.values[0] == 1.0);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(back.times[k] == tr.times[k]);
    CHECK(back.values[k] == tr.values[k]);
  }
}

TEST_CASE("trace CSV errors") {
  const Probe p;
  CHECK_THROWS_AS(io::trace_from_csv("time,v\n0,1\n", p), IoError);
  CHECK_THROWS_AS(io::trace_from_csv("t,value\n0;1\n", p), IoError);
  CHECK_THROWS_AS(io::trace_from_csv("t,value\n0,abc\n", p), IoError);
}

TEST_CASE("trace metadata round trip") {
  io::TraceMetadata m;
  m.probe = probe_for(Preparation::MinusY);
  m.layout = ChainLayout{Model::XY, 5};
  m.noise = NoiseSpec{0.01, 7};
  m.source = "spectral";
  const auto back = io::trace_metadata_from_json(io::trace_metadata_to_json(m));
  CHECK(back.probe == m.probe);
  REQUIRE(back.layout.has_value());
  CHECK(back.layout->n_spins == 5);
  CHECK(back.noise->seed == 7);
  CHECK(back.source == "spectral");

  CHECK_THROWS_AS(io::trace_metadata_from_json(R"({"source": "lab"})"), IoError);
  CHECK_THROWS_AS(io::trace_metadata_from_json(R"({"probe": {"preparation": "plus_x", "observable": "Z1"}})"),
                  SpecError);
}

TEST_CASE("result serializations") {
  const auto spec = oracle::xx_spec({1.2, 0.8, 1.1});
  const auto r = run_tomography(spec, {});
  const auto j = json::parse(io::result_to_json(r));
  REQUIRE(j["recovered"].size() == 3);
  CHECK(j["recovered"][0]["name"] == "J_1");
  CHECK(j["recovered"][0]["truth"] == 1.2);

  const auto csv = io::result_to_csv(r);
  CHECK(csv.rfind("parameter,estimate,truth,abs_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  const auto overlay = io::overlay_csv(r.chains[0]);
  CHECK(overlay.rfind("t,measured,fitted\n", 0) == 0);
  const auto fit = json::parse(io::fit_report_json(r.chains[0]));
  CHECK(fit["terms"].size() == 2);
  CHECK(fit["probe"]["observable"] == "X1");

  const auto err = json::parse(io::error_report_json(compare_to_truth(r, spec)));
  CHECK(err["max_abs"].get<double>() < 1e-6);
}
