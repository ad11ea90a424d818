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

#ifndef SPINTOMO_FITTING_HPP
#define SPINTOMO_FITTING_HPP

#include <cstddef>

#include "spintomo/cosine_sum.hpp"
#include "spintomo/dynamics.hpp"
#include "spintomo/errors.hpp"

namespace spintomo {

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, CosineSumModel best)
      : Error(ErrorKind::Convergence, what), best_(std::move(best)) {}
  const CosineSumModel& best() const noexcept { return best_; }
  double residual_rms() const noexcept { return best_.residual_rms; }

 private:
  CosineSumModel best_;
};

// Cosine terms and dc flag implied by an (m+1)-node flux chain: the path
// graph spectrum is symmetric, so there are floor((m+1)/2) frequencies and a
// zero mode iff m+1 is odd.
struct TermLayout {
  std::size_t n_terms = 0;
  bool dc = false;
};
TermLayout term_layout(std::size_t links);

struct SpectrumOptions {
  bool include_dc = false;
  std::size_t zero_pad = 16;
  // Periodogram peaks weaker than this fraction of the strongest are ignored.
  double peak_floor = 1e-2;
};

// Initial model from the strongest peaks of a zero-padded, Hann-windowed
// periodogram with log-parabolic peak interpolation; amplitudes by linear
// least squares at the peak frequencies. Peaks must be at least one Rayleigh
// bin (2 pi / T) apart; throws ResolutionError otherwise.
CosineSumModel estimate_spectrum(const SignalTrace& trace, std::size_t n_terms,
                                 const SpectrumOptions& options = {});

// Initial model from a matrix pencil (shift-invariance of the Hankel signal
// subspace). Not Rayleigh-limited, so it also seeds weak or close terms.
CosineSumModel estimate_spectrum_pencil(const SignalTrace& trace, std::size_t n_terms,
                                        const SpectrumOptions& options = {});

struct RefineOptions {
  double relative_decrease = 1e-12;
  std::size_t max_iterations = 500;
  // Minimum frequency separation of the refined terms.
  double min_separation = 1e-6;
};

// Damped (Levenberg-Marquardt) least squares over all amplitudes,
// frequencies and the dc term. Output is canonicalized (ascending omega).
CosineSumModel refine_fit(const SignalTrace& trace, const CosineSumModel& init,
                          const RefineOptions& options = {});

// Amplitudes (and dc) by linear least squares at fixed frequencies.
CosineSumModel fit_amplitudes(const SignalTrace& trace, std::vector<double> omegas,
                              bool include_dc);

double residual_rms(const SignalTrace& trace, const CosineSumModel& model);

}  // namespace spintomo

#endif  // SPINTOMO_FITTING_HPP
