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

#ifndef SPINTOMO_TOMOGRAPHY_HPP
#define SPINTOMO_TOMOGRAPHY_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spintomo/chain_model.hpp"
#include "spintomo/cosine_sum.hpp"
#include "spintomo/dynamics.hpp"
#include "spintomo/fitting.hpp"
#include "spintomo/series.hpp"

namespace spintomo {

enum class Simulator { Spectral, Statevector };
enum class Initializer { Pencil, Periodogram };

const char* to_string(Simulator s);
const char* to_string(Initializer i);
Simulator simulator_from_string(std::string_view name);
Initializer initializer_from_string(std::string_view name);

struct TomographyConfig {
  double sample_step = M_PI / 25.0;
  double window = 8.0 * M_PI;
  // Taylor coefficients matched per chain; 0 means one per link. Orders past
  // the link count only feed the consistency diagnostics.
  std::size_t taylor_order = 0;
  std::optional<NoiseSpec> noise;
  // Cosine terms per chain; 0 derives them from the chain length.
  std::size_t n_terms = 0;
  Simulator simulator = Simulator::Spectral;
  BulkState bulk;  // used by the state-vector simulator
  Initializer initializer = Initializer::Pencil;
  InversionOptions inversion;
  RefineOptions refine;
};

// Throws SpecError naming the violated bound.
void validate_config(const TomographyConfig& config);

struct ChainReport {
  Probe probe;
  std::vector<ParamRef> labels;
  SignalTrace trace;  // as fitted (sign-corrected to the + eigenstate)
  CosineSumModel fit;
  std::vector<double> eta;
  Inversion inversion;
  // (eta_j - mu_j(c_hat)) / |eta_j| for the orders past the link count.
  std::vector<double> taylor_mismatch;
};

struct RecoveredParameter {
  ParamRef ref;
  double estimate = 0.0;
  std::optional<double> truth;
};

struct TomographyResult {
  ChainLayout layout;
  bool simulated = true;
  std::vector<RecoveredParameter> recovered;  // canonical parameter order
  std::vector<ChainReport> chains;
  double residual_rms = 0.0;  // worst chain
  std::vector<std::string> warnings;

  double estimate(const ParamRef& ref) const;
};

// Simulation mode: synthesize one trace per probe from the spec.
TomographyResult run_tomography(const ChainSpec& spec, const TomographyConfig& config);

// Ingest mode: one trace per required probe (either eigenstate of the probed
// observable). `truth`, when given, fills deviations and supplies the signs
// of signed couplings.
TomographyResult run_tomography(const ChainLayout& layout,
                                std::span<const SignalTrace> traces,
                                const TomographyConfig& config,
                                const ChainSpec* truth = nullptr);

struct ErrorEntry {
  ParamRef ref;
  double estimate = 0.0;
  double truth = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

struct ErrorReport {
  std::vector<ErrorEntry> entries;
  double max_abs = 0.0;
  double rms_abs = 0.0;
  double max_rel = 0.0;
  ParamRef worst;
};

ErrorReport compare_to_truth(const TomographyResult& result, const ChainSpec& spec);

}  // namespace spintomo

#endif  // SPINTOMO_TOMOGRAPHY_HPP
