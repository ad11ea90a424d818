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
#include <random>
#include <set>

#include "oracles.hpp"
#include "spintomo/io.hpp"
#include "spintomo/tomography.hpp"

using namespace spintomo;

namespace {

const double kEval[] = {1.39998, 1.48005, 1.06003, 0.800058, 1.36050, 0.970524, 0.660894};

double max_abs_error(const TomographyResult& r) {
  double worst = 0.0;
  for (const auto& p : r.recovered) worst = std::max(worst, std::abs(p.estimate - *p.truth));
  return worst;
}

SignalTrace cosine_trace(const std::vector<CosineTerm>& terms, const Probe& probe, std::size_t n = 200) {
  SignalTrace tr;
  tr.probe = probe;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * M_PI / 25.0;
    double v = 0.0;
    for (const auto& c : terms) v += c.amplitude * std::cos(c.omega * t);
    tr.times.push_back(t);
    tr.values.push_back(v);
  }
  return tr;
}

}  // namespace

TEST_CASE("XX N=8 reproduces the published couplings") {
  const auto r = run_tomography(oracle::xx_spec(oracle::kReferenceCouplings), {});
  REQUIRE(r.recovered.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(r.recovered[i].ref.name() == "J_" + std::to_string(i + 1));
    CHECK(std::abs(r.recovered[i].estimate - oracle::kReferenceCouplings[i]) <= 1e-2);
    CHECK(std::abs(r.recovered[i].estimate - kEval[i]) <= 1e-3);
  }
  CHECK(r.warnings.empty());
  CHECK(r.chains.size() == 1);
  CHECK(r.residual_rms < 1e-8);
}

TEST_CASE("XX N=2 recovers a unit coupling") {
  const auto r = run_tomography(oracle::xx_spec({1.0}), {});
  REQUIRE(r.recovered.size() == 1);
  CHECK(std::abs(r.recovered[0].estimate - 1.0) <= 1e-6);
}

TEST_CASE("Ising N=4 shares the XX flux chain") {
  ChainSpec s;
  s.model = Model::IsingTransverse;
  s.n_spins = 4;
  s.b = {1.40, 1.06, 1.36, 0.66};
  s.jz = {1.48, 0.80, 0.97};
  const auto r = run_tomography(s, {});
  REQUIRE(r.recovered.size() == 7);
  for (const auto& p : r.recovered) CHECK(std::abs(p.estimate - s.value(p.ref)) <= 1e-2);
  CHECK(r.chains[0].probe.observable == Observable::Z1);
}

TEST_CASE("XY processes both chains and covers every coupling") {
  ChainSpec s;
  s.model = Model::XY;
  s.n_spins = 6;
  s.jx = {1.1, 0.7, 1.3, 0.9, 1.2};
  s.jy = {0.8, 1.4, 0.6, 1.0, 0.75};
  const auto r = run_tomography(s, {});
  CHECK(r.chains.size() == 2);
  std::set<std::string> names, want;
  for (const auto& p : r.recovered) {
    names.insert(p.ref.name());
    CHECK(std::abs(p.estimate - s.value(p.ref)) <= 1e-3);
  }
  for (const auto& ref : parameters(s.layout())) want.insert(ref.name());
  CHECK(names == want);
  CHECK(names.size() == 10);
}

TEST_CASE("round trip on random XX chains") {
  std::mt19937_64 rng(2024);
  const std::size_t sizes[] = {4, 6, 8};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = sizes[trial % 3];
    const auto spec = oracle::xx_spec(oracle::random_links(rng, n - 1));
    try {
      const auto r = run_tomography(spec, {});
      CHECK_MESSAGE(max_abs_error(r) <= 1e-3, "trial ", trial);
    } catch (const Error& e) {
      // A typed failure is acceptable; a silently wrong answer is not.
      MESSAGE("trial ", trial, " raised ", to_string(e.kind()), " at ", e.stage());
      CHECK_FALSE(e.stage().empty());
    }
  }
}

TEST_CASE("identical configs serialize identically") {
  TomographyConfig cfg;
  cfg.noise = NoiseSpec{0.01, 7};
  const auto spec = oracle::xx_spec(oracle::kReferenceCouplings);
  CHECK(io::result_to_json(run_tomography(spec, cfg)) == io::result_to_json(run_tomography(spec, cfg)));
}

TEST_CASE("noise at sigma 0.01 stays within the surrogate bound") {
  TomographyConfig cfg;
  cfg.noise = NoiseSpec{0.01, 7};
  const auto r = run_tomography(oracle::xx_spec(oracle::kReferenceCouplings), cfg);
  CHECK(max_abs_error(r) <= 5e-2);
}

TEST_CASE("state-vector simulator gives the same couplings") {
  TomographyConfig cfg;
  cfg.simulator = Simulator::Statevector;
  cfg.bulk.kind = BulkState::Kind::RandomPure;
  cfg.bulk.seed = 3;
  const auto r = run_tomography(oracle::xx_spec({1.2, 0.9, 1.1, 0.7, 1.3}), cfg);
  CHECK(max_abs_error(r) <= 1e-6);
}

TEST_CASE("config bounds are enforced") {
  TomographyConfig cfg;
  cfg.window = 5 * cfg.sample_step;
  CHECK_THROWS_AS(run_tomography(oracle::xx_spec({1.0, 1.0}), cfg), SpecError);
  cfg = {};
  cfg.taylor_order = 2;
  CHECK_THROWS_AS(run_tomography(oracle::xx_spec({1.0, 1.0, 1.0}), cfg), SpecError);
}

TEST_CASE("compare_to_truth") {
  const auto spec = oracle::xx_spec(oracle::kReferenceCouplings);
  auto r = run_tomography(spec, {});
  for (auto& p : r.recovered) p.estimate = *p.truth;
  auto rep = compare_to_truth(r, spec);
  CHECK(rep.max_abs == 0.0);
  CHECK(rep.rms_abs == 0.0);

  for (std::size_t i = 0; i < 7; ++i) r.recovered[i].estimate = kEval[i];
  rep = compare_to_truth(r, spec);
  CHECK(rep.max_abs == doctest::Approx(8.94e-4).epsilon(1e-6));
  CHECK(rep.worst.name() == "J_7");

  for (std::size_t i = 0; i < 7; ++i) r.recovered[i].estimate = oracle::kReferenceCouplings[i] + 1e-3 * (i + 1);
  rep = compare_to_truth(r, spec);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(rep.entries[i].abs_error == doctest::Approx(1e-3 * (i + 1)).epsilon(1e-9));
    CHECK(rep.entries[i].rel_error == doctest::Approx(1e-3 * (i + 1) / oracle::kReferenceCouplings[i]).epsilon(1e-9));
  }

  CHECK_THROWS_AS(compare_to_truth(r, oracle::xx_spec({1.0, 1.0})), ShapeMismatch);
}

TEST_CASE("ingest mode accepts either eigenstate") {
  const auto spec = oracle::xx_spec(oracle::kReferenceCouplings);
  const auto pc = flux_chains(spec)[0];
  const auto probe = pc.probe;
  const auto base = spectral_signal(pc.chain, sample_times(M_PI / 25.0, 8.0 * M_PI), probe);
  auto neg = base;
  neg.probe = opposite(probe);
  for (auto& v : neg.values) v = -v;
  const auto a = run_tomography(spec.layout(), std::span(&base, 1), {}, &spec);
  const auto b = run_tomography(spec.layout(), std::span(&neg, 1), {}, &spec);
  CHECK_FALSE(a.simulated);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(a.recovered[i].estimate == b.recovered[i].estimate);
    CHECK(std::abs(a.recovered[i].estimate - kEval[i]) <= 1e-3);
  }
}

TEST_CASE("ingest failures carry the pipeline stage") {
  ChainLayout xy{Model::XY, 4};
  const auto x = cosine_trace({{1.0, 2.0}}, flux_layout(xy)[0].probe);
  try {
    run_tomography(xy, std::span(&x, 1), {});
    FAIL("missing trace accepted");
  } catch (const SpecError& e) {
    CHECK(e.stage() == "spec");
  }

  ChainLayout xx{Model::XX, 8};
  const auto short_trace = cosine_trace({{1.0, 2.0}}, flux_layout(xx)[0].probe, 12);
  try {
    run_tomography(xx, std::span(&short_trace, 1), {});
    FAIL("short trace accepted");
  } catch (const ResolutionError& e) {
    CHECK(e.stage() == "fit");
  }

  // Negative weights are not the boundary spectral measure of any chain.
  ChainLayout four{Model::XX, 4};
  const auto bad = cosine_trace({{1.6, 1.0}, {-0.6, 2.5}}, flux_layout(four)[0].probe);
  try {
    run_tomography(four, std::span(&bad, 1), {});
    FAIL("inconsistent trace accepted");
  } catch (const Error& e) {
    CHECK(e.stage() == "invert");
  }
}
