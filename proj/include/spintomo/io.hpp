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

#ifndef SPINTOMO_IO_HPP
#define SPINTOMO_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include "spintomo/chain_model.hpp"
#include "spintomo/dynamics.hpp"
#include "spintomo/tomography.hpp"

// Text formats: JSON specs/configs/reports and CSV traces/tables. Parse
// failures raise IoError; unknown enum names and invalid values SpecError.
namespace spintomo::io {

// {"model": "xx"|"xy"|"ising_transverse", "n_spins": N,
//  "couplings": {"J": [...]} (or JX/JY, JZ/B), "allow_signed": bool}
ChainSpec spec_from_json(std::string_view text);
std::string spec_to_json(const ChainSpec& spec);
// Model and n_spins only; couplings may be absent.
ChainLayout layout_from_json(std::string_view text);
bool json_has_couplings(std::string_view text);

// Flags mirrored in JSON: step, window, taylor_order, n_terms, noise_sigma,
// seed, simulator, initializer, bulk. Keys may use '-' or '_'.
TomographyConfig config_from_json(std::string_view text,
                                  const TomographyConfig& base = {});
std::string config_to_json(const TomographyConfig& config);

// Header "t,value", one sample per row, 17 significant digits.
std::string trace_to_csv(const SignalTrace& trace);
// The probe is not stored in CSV; pass it from the metadata sidecar.
SignalTrace trace_from_csv(std::string_view text, const Probe& probe);

struct TraceMetadata {
  Probe probe;
  std::optional<ChainLayout> layout;
  std::optional<NoiseSpec> noise;
  std::string source;  // "spectral", "statevector", or free text for measured data
};
std::string trace_metadata_to_json(const TraceMetadata& meta);
TraceMetadata trace_metadata_from_json(std::string_view text);

// {"probe": ..., "terms": [{"A", "omega"}], "dc", "residual_rms", "iterations"}
std::string fit_report_json(const ChainReport& chain);
// Columns t,measured,fitted.
std::string overlay_csv(const ChainReport& chain);

std::string result_to_json(const TomographyResult& result);
// Columns parameter,estimate,truth,abs_error (truth columns empty if unknown).
std::string result_to_csv(const TomographyResult& result);
std::string error_report_json(const ErrorReport& report);

std::string probe_to_json(const Probe& probe);

}  // namespace spintomo::io

#endif  // SPINTOMO_IO_HPP
