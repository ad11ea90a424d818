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

#ifndef SPINTOMO_DYNAMICS_HPP
#define SPINTOMO_DYNAMICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spintomo/chain_model.hpp"

namespace spintomo {

// Sampled expectation value of the probed spin-1 observable.
struct SignalTrace {
  std::vector<double> times;
  std::vector<double> values;
  Probe probe;

  std::size_t size() const { return times.size(); }
};

// Throws SpecError unless times are strictly increasing, finite and match
// values in length.
void check_trace(const SignalTrace& trace);

// Uniform grid t_k = k * step, k = 0 .. floor(window/step) - 1 (window is
// exclusive up to rounding).
std::vector<double> sample_times(double step, double window);

// Eigenpairs of the (m+1)-node tridiagonal with off-diagonals c_j: the
// boundary signal is sum_k weights[k] cos(2 eigenvalues[k] t).
struct ChainSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> weights;      // squared first components; sum to one
};

ChainSpectrum chain_spectrum(const FluxChain& chain);

SignalTrace spectral_signal(const FluxChain& chain, std::span<const double> times,
                            const Probe& probe = {});

// Truncated series sum_{l<=order} (2t)^l / l! delta_1^(l).
SignalTrace taylor_signal(const FluxChain& chain, std::span<const double> times,
                          std::size_t order, const Probe& probe = {});

// State of spins 2..N for the state-vector simulator.
struct BulkState {
  enum class Kind {
    Product,          // random pure single-spin states
    RandomPure,       // Haar-like random pure state of the whole bulk
    MaximallyMixed,   // average over `samples` random pure bulk states
    Explicit,         // `amplitudes`, dimension 2^(N-1), bit k-1 <-> spin k+1
  };
  Kind kind = Kind::Product;
  std::uint64_t seed = 0;
  std::size_t samples = 20;
  std::vector<double> amplitudes_re;
  std::vector<double> amplitudes_im;

  static BulkState all_zero(std::size_t n_spins);
};

struct StatevectorOptions {
  std::size_t max_spins = 12;
  double norm_tolerance = 1e-9;
};

// Dense exact evolution of the full chain with spin 1 prepared per `probe`.
SignalTrace statevector_signal(const ChainSpec& spec, const Probe& probe,
                               const BulkState& bulk, std::span<const double> times,
                               const StatevectorOptions& options = {});

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

SignalTrace add_noise(const SignalTrace& trace, const NoiseSpec& noise);

}  // namespace spintomo

#endif  // SPINTOMO_DYNAMICS_HPP
