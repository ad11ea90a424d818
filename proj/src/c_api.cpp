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

#include "spintomo/spintomo.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/fitting.hpp"
#include "spintomo/io.hpp"
#include "spintomo/tomography.hpp"

#ifndef SPINTOMO_VERSION
#define SPINTOMO_VERSION "0.0.0"
#endif

struct spintomo_spec {
  spintomo::ChainLayout layout;
  std::optional<spintomo::ChainSpec> spec;
};

struct spintomo_config {
  spintomo::TomographyConfig config;
  std::uint64_t seed = 0;
};

struct spintomo_trace {
  spintomo::SignalTrace trace;
  spintomo::io::TraceMetadata meta;
};

struct spintomo_result {
  spintomo::TomographyResult result;
};

namespace {

using namespace spintomo;

thread_local std::string g_error;
thread_local std::string g_stage;

spintomo_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Spec: return SPINTOMO_ERR_SPEC;
    case ErrorKind::Io: return SPINTOMO_ERR_IO;
    case ErrorKind::Eigen: return SPINTOMO_ERR_EIGEN;
    case ErrorKind::Overflow: return SPINTOMO_ERR_OVERFLOW;
    case ErrorKind::CapExceeded: return SPINTOMO_ERR_CAP_EXCEEDED;
    case ErrorKind::Normalization: return SPINTOMO_ERR_NORMALIZATION;
    case ErrorKind::InsufficientChain: return SPINTOMO_ERR_INSUFFICIENT_CHAIN;
    case ErrorKind::Inversion: return SPINTOMO_ERR_INVERSION;
    case ErrorKind::Degenerate: return SPINTOMO_ERR_DEGENERATE;
    case ErrorKind::Resolution: return SPINTOMO_ERR_RESOLUTION;
    case ErrorKind::Convergence: return SPINTOMO_ERR_CONVERGENCE;
    case ErrorKind::ShapeMismatch: return SPINTOMO_ERR_SHAPE_MISMATCH;
  }
  return SPINTOMO_ERR_INTERNAL;
}

spintomo_status fail(spintomo_status s, std::string message, std::string stage = {}) {
  g_error = std::move(message);
  g_stage = std::move(stage);
  return s;
}

// Runs `f`, translating exceptions into status codes.
template <typename F>
spintomo_status guarded(F&& f) {
  g_error.clear();
  g_stage.clear();
  try {
    f();
    return SPINTOMO_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), std::string(to_string(e.kind())) + ": " + e.what(),
                e.stage());
  } catch (const std::bad_alloc&) {
    return fail(SPINTOMO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPINTOMO_ERR_INTERNAL, std::string("internal error: ") + e.what());
  }
}

#define SPINTOMO_REQUIRE(cond, what)                    \
  do {                                                  \
    if (!(cond)) return fail(SPINTOMO_ERR_INVALID_ARGUMENT, what); \
  } while (0)

spintomo_status emit(const std::string& s, char** out) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) return fail(SPINTOMO_ERR_INTERNAL, "out of memory");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
  return SPINTOMO_OK;
}

template <typename F>
spintomo_status emit_guarded(char** out, F&& make) {
  SPINTOMO_REQUIRE(out, "output pointer is null");
  std::string s;
  const auto st = guarded([&] { s = make(); });
  return st == SPINTOMO_OK ? emit(s, out) : st;
}

}  // namespace

extern "C" {

const char* spintomo_version(void) { return SPINTOMO_VERSION; }

const char* spintomo_status_name(spintomo_status status) {
  switch (status) {
    case SPINTOMO_OK: return "ok";
    case SPINTOMO_ERR_SPEC: return "spec_error";
    case SPINTOMO_ERR_IO: return "io_error";
    case SPINTOMO_ERR_EIGEN: return "eigen_error";
    case SPINTOMO_ERR_OVERFLOW: return "overflow_error";
    case SPINTOMO_ERR_CAP_EXCEEDED: return "cap_exceeded";
    case SPINTOMO_ERR_NORMALIZATION: return "normalization_error";
    case SPINTOMO_ERR_INSUFFICIENT_CHAIN: return "insufficient_chain";
    case SPINTOMO_ERR_INVERSION: return "inversion_error";
    case SPINTOMO_ERR_DEGENERATE: return "degenerate_error";
    case SPINTOMO_ERR_RESOLUTION: return "resolution_error";
    case SPINTOMO_ERR_CONVERGENCE: return "convergence_error";
    case SPINTOMO_ERR_SHAPE_MISMATCH: return "shape_mismatch";
    case SPINTOMO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SPINTOMO_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* spintomo_last_error(void) { return g_error.c_str(); }
const char* spintomo_last_error_stage(void) { return g_stage.c_str(); }

int spintomo_status_is_input_error(spintomo_status status) {
  return status == SPINTOMO_ERR_SPEC || status == SPINTOMO_ERR_IO ||
         status == SPINTOMO_ERR_INVALID_ARGUMENT || status == SPINTOMO_ERR_SHAPE_MISMATCH;
}

void spintomo_string_free(char* s) { std::free(s); }

spintomo_status spintomo_spec_from_json(const char* json, spintomo_spec** out) {
  SPINTOMO_REQUIRE(json && out, "null argument");
  *out = nullptr;
  auto h = std::make_unique<spintomo_spec>();
  const auto st = guarded([&] {
    if (io::json_has_couplings(json)) {
      h->spec = io::spec_from_json(json);
      h->layout = h->spec->layout();
    } else {
      h->layout = io::layout_from_json(json);
    }
  });
  if (st == SPINTOMO_OK) *out = h.release();
  return st;
}

void spintomo_spec_free(spintomo_spec* spec) { delete spec; }

int spintomo_spec_has_couplings(const spintomo_spec* spec) {
  return spec && spec->spec.has_value();
}

spintomo_status spintomo_spec_to_json(const spintomo_spec* spec, char** out) {
  SPINTOMO_REQUIRE(spec, "null spec");
  SPINTOMO_REQUIRE(spec->spec, "spec has no couplings");
  return emit_guarded(out, [&] { return io::spec_to_json(*spec->spec); });
}

size_t spintomo_spec_probe_count(const spintomo_spec* spec) {
  if (!spec) return 0;
  return spec->layout.model == Model::XY ? 2 : 1;
}

const char* spintomo_spec_probe_observable(const spintomo_spec* spec, size_t index) {
  if (!spec || index >= spintomo_spec_probe_count(spec)) return nullptr;
  try {
    return to_string(flux_layout(spec->layout)[index].probe.observable);
  } catch (...) {
    return nullptr;
  }
}

spintomo_status spintomo_config_create(spintomo_config** out) {
  SPINTOMO_REQUIRE(out, "null argument");
  *out = new (std::nothrow) spintomo_config();
  return *out ? SPINTOMO_OK : fail(SPINTOMO_ERR_INTERNAL, "out of memory");
}

void spintomo_config_free(spintomo_config* config) { delete config; }

spintomo_status spintomo_config_merge_json(spintomo_config* config, const char* json) {
  SPINTOMO_REQUIRE(config && json, "null argument");
  return guarded([&] {
    TomographyConfig merged = io::config_from_json(json, config->config);
    validate_config(merged);
    config->config = merged;
    config->seed = merged.bulk.seed;
  });
}

spintomo_status spintomo_config_set_step(spintomo_config* config, double step) {
  SPINTOMO_REQUIRE(config, "null config");
  if (!(step > 0.0)) return fail(SPINTOMO_ERR_SPEC, "SpecError: step must be positive");
  config->config.sample_step = step;
  return SPINTOMO_OK;
}

spintomo_status spintomo_config_set_window(spintomo_config* config, double window) {
  SPINTOMO_REQUIRE(config, "null config");
  if (!(window > 0.0)) return fail(SPINTOMO_ERR_SPEC, "SpecError: window must be positive");
  config->config.window = window;
  return SPINTOMO_OK;
}

spintomo_status spintomo_config_set_taylor_order(spintomo_config* config, size_t order) {
  SPINTOMO_REQUIRE(config, "null config");
  config->config.taylor_order = order;
  return SPINTOMO_OK;
}

spintomo_status spintomo_config_set_n_terms(spintomo_config* config, size_t n_terms) {
  SPINTOMO_REQUIRE(config, "null config");
  config->config.n_terms = n_terms;
  return SPINTOMO_OK;
}

spintomo_status spintomo_config_set_noise(spintomo_config* config, double sigma) {
  SPINTOMO_REQUIRE(config, "null config");
  if (!(sigma >= 0.0)) return fail(SPINTOMO_ERR_SPEC, "SpecError: noise sigma must be non-negative");
  if (sigma == 0.0) config->config.noise.reset();
  else config->config.noise = NoiseSpec{sigma, config->seed};
  return SPINTOMO_OK;
}

spintomo_status spintomo_config_set_seed(spintomo_config* config, uint64_t seed) {
  SPINTOMO_REQUIRE(config, "null config");
  config->seed = seed;
  config->config.bulk.seed = seed;
  if (config->config.noise) config->config.noise->seed = seed;
  return SPINTOMO_OK;
}

spintomo_status spintomo_config_set_simulator(spintomo_config* config, const char* name) {
  SPINTOMO_REQUIRE(config && name, "null argument");
  return guarded([&] { config->config.simulator = simulator_from_string(name); });
}

spintomo_status spintomo_config_set_initializer(spintomo_config* config, const char* name) {
  SPINTOMO_REQUIRE(config && name, "null argument");
  return guarded([&] { config->config.initializer = initializer_from_string(name); });
}

spintomo_status spintomo_config_to_json(const spintomo_config* config, char** out) {
  SPINTOMO_REQUIRE(config, "null config");
  return emit_guarded(out, [&] { return io::config_to_json(config->config); });
}

spintomo_status spintomo_simulate(const spintomo_spec* spec, const spintomo_config* config,
                                  size_t probe_index, spintomo_trace** out) {
  SPINTOMO_REQUIRE(spec && config && out, "null argument");
  SPINTOMO_REQUIRE(spec->spec, "simulation needs a spec with couplings");
  *out = nullptr;
  auto h = std::make_unique<spintomo_trace>();
  const auto st = guarded([&] {
    const TomographyConfig& c = config->config;
    validate_config(c);
    const auto chains = flux_chains(*spec->spec);
    if (probe_index >= chains.size())
      throw SpecError("probe index " + std::to_string(probe_index) + " out of range");
    const auto& pc = chains[probe_index];
    const auto times = sample_times(c.sample_step, c.window);
    h->trace = c.simulator == Simulator::Spectral
                   ? spectral_signal(pc.chain, times, pc.probe)
                   : statevector_signal(*spec->spec, pc.probe, c.bulk, times);
    h->meta.probe = pc.probe;
    h->meta.layout = spec->layout;
    h->meta.source = to_string(c.simulator);
    if (c.noise) {
      NoiseSpec noise = *c.noise;
      noise.seed += probe_index;  // same offset as run_tomography
      h->trace = add_noise(h->trace, noise);
      h->meta.noise = noise;
    }
  });
  if (st == SPINTOMO_OK) *out = h.release();
  return st;
}

spintomo_status spintomo_trace_from_csv(const char* csv, const char* metadata_json,
                                        spintomo_trace** out) {
  SPINTOMO_REQUIRE(csv && metadata_json && out, "null argument");
  *out = nullptr;
  auto h = std::make_unique<spintomo_trace>();
  const auto st = guarded([&] {
    h->meta = io::trace_metadata_from_json(metadata_json);
    h->trace = io::trace_from_csv(csv, h->meta.probe);
  });
  if (st == SPINTOMO_OK) *out = h.release();
  return st;
}

void spintomo_trace_free(spintomo_trace* trace) { delete trace; }

size_t spintomo_trace_size(const spintomo_trace* trace) { return trace ? trace->trace.size() : 0; }

spintomo_status spintomo_trace_sample(const spintomo_trace* trace, size_t index, double* t,
                                      double* value) {
  SPINTOMO_REQUIRE(trace && t && value, "null argument");
  SPINTOMO_REQUIRE(index < trace->trace.size(), "sample index out of range");
  *t = trace->trace.times[index];
  *value = trace->trace.values[index];
  return SPINTOMO_OK;
}

spintomo_status spintomo_trace_to_csv(const spintomo_trace* trace, char** out) {
  SPINTOMO_REQUIRE(trace, "null trace");
  return emit_guarded(out, [&] { return io::trace_to_csv(trace->trace); });
}

spintomo_status spintomo_trace_metadata_json(const spintomo_trace* trace, char** out) {
  SPINTOMO_REQUIRE(trace, "null trace");
  return emit_guarded(out, [&] { return io::trace_metadata_to_json(trace->meta); });
}

spintomo_status spintomo_run(const spintomo_spec* spec, const spintomo_config* config,
                             spintomo_result** out) {
  SPINTOMO_REQUIRE(spec && config && out, "null argument");
  SPINTOMO_REQUIRE(spec->spec, "simulation needs a spec with couplings");
  *out = nullptr;
  auto h = std::make_unique<spintomo_result>();
  const auto st = guarded([&] { h->result = run_tomography(*spec->spec, config->config); });
  if (st == SPINTOMO_OK) *out = h.release();
  return st;
}

spintomo_status spintomo_run_traces(const spintomo_spec* spec,
                                    const spintomo_trace* const* traces, size_t n_traces,
                                    const spintomo_config* config, spintomo_result** out) {
  SPINTOMO_REQUIRE(config && out && (traces || n_traces == 0), "null argument");
  *out = nullptr;
  auto h = std::make_unique<spintomo_result>();
  const auto st = guarded([&] {
    std::vector<SignalTrace> data;
    std::optional<ChainLayout> layout;
    if (spec) layout = spec->layout;
    for (size_t i = 0; i < n_traces; ++i) {
      if (!traces[i]) throw SpecError("trace " + std::to_string(i) + " is null");
      data.push_back(traces[i]->trace);
      if (const auto& l = traces[i]->meta.layout) {
        if (layout && !(*layout == *l))
          throw ShapeMismatch("trace " + std::to_string(i) + " metadata declares a different chain layout");
        layout = *l;
      }
    }
    if (!layout) throw SpecError("no chain layout: pass a spec or traces with model metadata");
    const ChainSpec* truth = spec && spec->spec ? &*spec->spec : nullptr;
    h->result = run_tomography(*layout, data, config->config, truth);
  });
  if (st == SPINTOMO_OK) *out = h.release();
  return st;
}

void spintomo_result_free(spintomo_result* result) { delete result; }

size_t spintomo_result_param_count(const spintomo_result* result) {
  return result ? result->result.recovered.size() : 0;
}

spintomo_status spintomo_result_param(const spintomo_result* result, size_t index,
                                      const char** name, double* estimate, double* truth,
                                      int* has_truth) {
  SPINTOMO_REQUIRE(result && name && estimate && has_truth, "null argument");
  SPINTOMO_REQUIRE(index < result->result.recovered.size(), "parameter index out of range");
  // Names are stable for the result's lifetime.
  static thread_local std::string name_buf;
  const auto& p = result->result.recovered[index];
  name_buf = p.ref.name();
  *name = name_buf.c_str();
  *estimate = p.estimate;
  *has_truth = p.truth.has_value() ? 1 : 0;
  if (p.truth && truth) *truth = *p.truth;
  return SPINTOMO_OK;
}

size_t spintomo_result_chain_count(const spintomo_result* result) {
  return result ? result->result.chains.size() : 0;
}

const char* spintomo_result_chain_observable(const spintomo_result* result, size_t chain) {
  if (!result || chain >= result->result.chains.size()) return nullptr;
  return to_string(result->result.chains[chain].probe.observable);
}

size_t spintomo_result_warning_count(const spintomo_result* result) {
  return result ? result->result.warnings.size() : 0;
}

const char* spintomo_result_warning(const spintomo_result* result, size_t index) {
  if (!result || index >= result->result.warnings.size()) return nullptr;
  return result->result.warnings[index].c_str();
}

double spintomo_result_residual_rms(const spintomo_result* result) {
  return result ? result->result.residual_rms : 0.0;
}

spintomo_status spintomo_result_to_json(const spintomo_result* result, char** out) {
  SPINTOMO_REQUIRE(result, "null result");
  return emit_guarded(out, [&] { return io::result_to_json(result->result); });
}

spintomo_status spintomo_result_to_csv(const spintomo_result* result, char** out) {
  SPINTOMO_REQUIRE(result, "null result");
  return emit_guarded(out, [&] { return io::result_to_csv(result->result); });
}

spintomo_status spintomo_result_fit_report_json(const spintomo_result* result, size_t chain,
                                                char** out) {
  SPINTOMO_REQUIRE(result, "null result");
  SPINTOMO_REQUIRE(chain < result->result.chains.size(), "chain index out of range");
  return emit_guarded(out, [&] { return io::fit_report_json(result->result.chains[chain]); });
}

spintomo_status spintomo_result_overlay_csv(const spintomo_result* result, size_t chain,
                                            char** out) {
  SPINTOMO_REQUIRE(result, "null result");
  SPINTOMO_REQUIRE(chain < result->result.chains.size(), "chain index out of range");
  return emit_guarded(out, [&] { return io::overlay_csv(result->result.chains[chain]); });
}

spintomo_status spintomo_result_compare_json(const spintomo_result* result,
                                             const spintomo_spec* truth, char** out) {
  SPINTOMO_REQUIRE(result && truth, "null argument");
  SPINTOMO_REQUIRE(truth->spec, "comparison needs a spec with couplings");
  return emit_guarded(out, [&] {
    return io::error_report_json(compare_to_truth(result->result, *truth->spec));
  });
}

}  // extern "C"
