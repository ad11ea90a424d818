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

#include "oracles.hpp"
#include "spintomo/fitting.hpp"

using namespace spintomo;

namespace {

const double kStep = M_PI / 25.0;
const double kWindow = 8.0 * M_PI;

SignalTrace sampled(const std::vector<CosineTerm>& terms, double dc = 0.0,
                    double step = kStep, double window = kWindow) {
  SignalTrace tr;
  tr.times = sample_times(step, window);
  for (double t : tr.times) {
    double v = dc;
    for (const auto& c : terms) v += c.amplitude * std::cos(c.omega * t);
    tr.values.push_back(v);
  }
  return tr;
}

SignalTrace reference_trace() {
  return spectral_signal(oracle::chain_of(oracle::kReferenceCouplings), sample_times(kStep, kWindow));
}

// Positive-frequency pairs of the tridiagonal spectrum, ascending.
std::vector<CosineTerm> exact_terms(const std::vector<double>& links) {
  const auto d = oracle::dense_spectrum(links);
  std::vector<CosineTerm> out;
  for (Eigen::Index k = 0; k < d.lambda.size(); ++k)
    if (d.lambda[k] > 1e-9) out.push_back({2.0 * d.weight[k], 2.0 * d.lambda[k]});
  return out;
}

}  // namespace

TEST_CASE("term layout follows the node count parity") {
  CHECK(term_layout(7).n_terms == 4);
  CHECK_FALSE(term_layout(7).dc);
  CHECK(term_layout(2).n_terms == 1);
  CHECK(term_layout(2).dc);
}

TEST_CASE("periodogram finds a single cosine") {
  const auto m = estimate_spectrum(sampled({{1.0, 2.0}}), 1);
  REQUIRE(m.terms.size() == 1);
  const double bin = 2.0 * M_PI / (200 * kStep) / 16.0;
  CHECK(std::abs(m.terms[0].omega - 2.0) <= bin);
}

TEST_CASE("periodogram seeds the reference trace near the published frequencies") {
  const auto m = estimate_spectrum(reference_trace(), 4);
  REQUIRE(m.terms.size() == 4);
  const double expect[] = {0.7821, 1.6909, 3.5929, 4.4941};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(m.terms[i].omega - expect[i]) < 0.02);
}

TEST_CASE("periodogram refuses cosines closer than one Rayleigh bin") {
  const double rayleigh = 2.0 * M_PI / kWindow;
  const auto tr = sampled({{0.5, 2.0}, {0.5, 2.0 + 0.5 * rayleigh}});
  CHECK_THROWS_AS(estimate_spectrum(tr, 2), ResolutionError);
}

TEST_CASE("too few samples is a resolution error") {
  const auto tr = sampled({{1.0, 2.0}}, 0.0, kStep, 10 * kStep);
  CHECK_THROWS_AS(estimate_spectrum(tr, 3), ResolutionError);
  CHECK_THROWS_AS(estimate_spectrum_pencil(tr, 3), ResolutionError);
}

TEST_CASE("non-uniform traces are rejected") {
  auto tr = sampled({{1.0, 2.0}});
  tr.times[5] += 0.01;
  CHECK_THROWS_AS(estimate_spectrum(tr, 1), SpecError);
}

TEST_CASE("matrix pencil recovers the exact spectrum of a noiseless chain") {
  const auto m = estimate_spectrum_pencil(reference_trace(), 4);
  const auto exact = exact_terms(oracle::kReferenceCouplings);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(m.terms[i].omega == doctest::Approx(exact[i].omega).epsilon(1e-8));
    CHECK(m.terms[i].amplitude == doctest::Approx(exact[i].amplitude).epsilon(1e-7));
  }
}

TEST_CASE("refinement recovers a two-term signal") {
  const auto tr = sampled({{0.3, 1.0}, {0.7, 3.0}});
  CosineSumModel init;
  init.terms = {{0.25, 1.03}, {0.6, 2.96}};
  const auto m = refine_fit(tr, init);
  CHECK(std::abs(m.terms[0].amplitude - 0.3) <= 1e-8);
  CHECK(std::abs(m.terms[0].omega - 1.0) <= 1e-8);
  CHECK(std::abs(m.terms[1].amplitude - 0.7) <= 1e-8);
  CHECK(std::abs(m.terms[1].omega - 3.0) <= 1e-8);
  CHECK(m.residual_rms < 1e-10);
}

TEST_CASE("refined reference fit reproduces the published table") {
  for (bool pencil : {true, false}) {
    const auto tr = reference_trace();
    const auto init = pencil ? estimate_spectrum_pencil(tr, 4) : estimate_spectrum(tr, 4);
    const auto m = refine_fit(tr, init);
    // Published pairs sorted by frequency.
    const CosineTerm published[] = {{0.3155, 0.7821}, {0.3176, 1.6909}, {0.0921, 3.5929}, {0.2748, 4.4941}};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(m.terms[i].amplitude - published[i].amplitude) <= 5e-3);
      CHECK(std::abs(m.terms[i].omega - published[i].omega) <= 5e-3);
    }
    CHECK(std::abs(m.amplitude_sum() - 1.0) <= 1e-6);
  }
}

TEST_CASE("fitted terms match the tridiagonal spectrum") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 3 + 2 * static_cast<std::size_t>(trial % 3);  // even node counts
    const auto links = oracle::random_links(rng, m);
    const auto tr = spectral_signal(oracle::chain_of(links), sample_times(kStep, kWindow));
    const auto fit = refine_fit(tr, estimate_spectrum_pencil(tr, term_layout(m).n_terms));
    const auto exact = exact_terms(links);
    REQUIRE(fit.terms.size() == exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
      CHECK(std::abs(fit.terms[i].omega - exact[i].omega) <= 1e-4);
      CHECK(std::abs(fit.terms[i].amplitude - exact[i].amplitude) <= 1e-4);
    }
  }
}

TEST_CASE("odd node counts fit with a dc term") {
  const std::vector<double> links{0.9, 1.3};
  const auto tr = spectral_signal(oracle::chain_of(links), sample_times(kStep, kWindow));
  SpectrumOptions so;
  so.include_dc = true;
  const auto fit = refine_fit(tr, estimate_spectrum_pencil(tr, 1, so));
  REQUIRE(fit.dc.has_value());
  const double w = std::hypot(0.9, 1.3);
  CHECK(fit.terms[0].omega == doctest::Approx(2.0 * w).epsilon(1e-9));
  // Zero mode weight c2^2 / (c1^2 + c2^2).
  CHECK(*fit.dc == doctest::Approx(1.69 / (0.81 + 1.69)).epsilon(1e-9));
  CHECK(std::abs(fit.amplitude_sum() - 1.0) <= 1e-6);
}

TEST_CASE("refit of a converged model is idempotent") {
  const auto tr = reference_trace();
  const auto a = refine_fit(tr, estimate_spectrum_pencil(tr, 4));
  const auto b = refine_fit(tr, a);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(a.terms[i].amplitude - b.terms[i].amplitude) < 1e-10);
    CHECK(std::abs(a.terms[i].omega - b.terms[i].omega) < 1e-10);
  }
}

TEST_CASE("noisy reference trace: residual near sigma, frequencies stable") {
  const auto clean = reference_trace();
  const auto noisy = add_noise(clean, {0.01, 7});
  const auto ref = refine_fit(clean, estimate_spectrum_pencil(clean, 4));
  const auto fit = refine_fit(noisy, estimate_spectrum_pencil(noisy, 4));
  CHECK(fit.residual_rms == doctest::Approx(0.01).epsilon(0.2));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fit.terms[i].omega - ref.terms[i].omega) < 1e-2);
}

TEST_CASE("iteration cap raises ConvergenceError with the best model") {
  const auto tr = reference_trace();
  CosineSumModel init;
  init.terms = {{0.25, 0.9}, {0.25, 1.5}, {0.25, 3.4}, {0.25, 4.6}};
  RefineOptions opts;
  opts.max_iterations = 2;
  try {
    refine_fit(tr, init, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best().terms.size() == 4);
    CHECK(e.residual_rms() > 0.0);
  }
}
