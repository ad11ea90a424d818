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

/* C interface to spintomo. All handles are opaque; every fallible call
   returns a spintomo_status and leaves a message for spintomo_last_error()
   on the calling thread. Strings returned through char** are owned by the
   caller and released with spintomo_string_free(). */

#ifndef SPINTOMO_H
#define SPINTOMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPINTOMO_BUILDING)
#    define SPINTOMO_API __declspec(dllexport)
#  else
#    define SPINTOMO_API __declspec(dllimport)
#  endif
#else
#  define SPINTOMO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spintomo_status {
  SPINTOMO_OK = 0,
  SPINTOMO_ERR_SPEC = 1,
  SPINTOMO_ERR_IO = 2,
  SPINTOMO_ERR_EIGEN = 3,
  SPINTOMO_ERR_OVERFLOW = 4,
  SPINTOMO_ERR_CAP_EXCEEDED = 5,
  SPINTOMO_ERR_NORMALIZATION = 6,
  SPINTOMO_ERR_INSUFFICIENT_CHAIN = 7,
  SPINTOMO_ERR_INVERSION = 8,
  SPINTOMO_ERR_DEGENERATE = 9,
  SPINTOMO_ERR_RESOLUTION = 10,
  SPINTOMO_ERR_CONVERGENCE = 11,
  SPINTOMO_ERR_SHAPE_MISMATCH = 12,
  SPINTOMO_ERR_INVALID_ARGUMENT = 13,
  SPINTOMO_ERR_INTERNAL = 14
} spintomo_status;

typedef struct spintomo_spec spintomo_spec;
typedef struct spintomo_config spintomo_config;
typedef struct spintomo_trace spintomo_trace;
typedef struct spintomo_result spintomo_result;

SPINTOMO_API const char* spintomo_version(void);
SPINTOMO_API const char* spintomo_status_name(spintomo_status status);
/* Message of the last failed call on this thread ("" if none). */
SPINTOMO_API const char* spintomo_last_error(void);
/* Pipeline stage of the last failure ("spec", "simulate", "fit", "invert",
   "map") or "" outside the pipeline. */
SPINTOMO_API const char* spintomo_last_error_stage(void);
/* Nonzero if `status` is an input/spec problem rather than a pipeline one. */
SPINTOMO_API int spintomo_status_is_input_error(spintomo_status status);
SPINTOMO_API void spintomo_string_free(char* s);

/* Chain specs. A spec without "couplings" is a layout (model + n_spins) and
   is only accepted where ground truth is optional. */
SPINTOMO_API spintomo_status spintomo_spec_from_json(const char* json, spintomo_spec** out);
SPINTOMO_API void spintomo_spec_free(spintomo_spec* spec);
SPINTOMO_API int spintomo_spec_has_couplings(const spintomo_spec* spec);
SPINTOMO_API spintomo_status spintomo_spec_to_json(const spintomo_spec* spec, char** out);
/* Number of probes (one trace each) the model needs: 2 for XY, else 1. */
SPINTOMO_API size_t spintomo_spec_probe_count(const spintomo_spec* spec);
/* Observable name ("X1", "Y1", "Z1") of probe `index`, or NULL. */
SPINTOMO_API const char* spintomo_spec_probe_observable(const spintomo_spec* spec, size_t index);

/* Pipeline configuration; defaults: step pi/25, window 8 pi, no noise. */
SPINTOMO_API spintomo_status spintomo_config_create(spintomo_config** out);
SPINTOMO_API void spintomo_config_free(spintomo_config* config);
/* Merges the keys present in `json` into `config`. */
SPINTOMO_API spintomo_status spintomo_config_merge_json(spintomo_config* config, const char* json);
SPINTOMO_API spintomo_status spintomo_config_set_step(spintomo_config* config, double step);
SPINTOMO_API spintomo_status spintomo_config_set_window(spintomo_config* config, double window);
SPINTOMO_API spintomo_status spintomo_config_set_taylor_order(spintomo_config* config, size_t order);
SPINTOMO_API spintomo_status spintomo_config_set_n_terms(spintomo_config* config, size_t n_terms);
/* sigma = 0 disables noise. */
SPINTOMO_API spintomo_status spintomo_config_set_noise(spintomo_config* config, double sigma);
/* Seeds both measurement noise and random bulk states. */
SPINTOMO_API spintomo_status spintomo_config_set_seed(spintomo_config* config, uint64_t seed);
/* "spectral" or "statevector". */
SPINTOMO_API spintomo_status spintomo_config_set_simulator(spintomo_config* config, const char* name);
/* "pencil" or "periodogram". */
SPINTOMO_API spintomo_status spintomo_config_set_initializer(spintomo_config* config, const char* name);
SPINTOMO_API spintomo_status spintomo_config_to_json(const spintomo_config* config, char** out);

/* Signal traces. */
SPINTOMO_API spintomo_status spintomo_simulate(const spintomo_spec* spec,
                                               const spintomo_config* config,
                                               size_t probe_index, spintomo_trace** out);
/* `metadata_json` is the sidecar written by spintomo_trace_metadata_json. */
SPINTOMO_API spintomo_status spintomo_trace_from_csv(const char* csv, const char* metadata_json,
                                                     spintomo_trace** out);
SPINTOMO_API void spintomo_trace_free(spintomo_trace* trace);
SPINTOMO_API size_t spintomo_trace_size(const spintomo_trace* trace);
SPINTOMO_API spintomo_status spintomo_trace_sample(const spintomo_trace* trace, size_t index,
                                                   double* t, double* value);
SPINTOMO_API spintomo_status spintomo_trace_to_csv(const spintomo_trace* trace, char** out);
SPINTOMO_API spintomo_status spintomo_trace_metadata_json(const spintomo_trace* trace, char** out);

/* Tomography. spintomo_run simulates from a full spec; spintomo_run_traces
   ingests traces. For the latter `spec` may be NULL (layout taken from the
   trace metadata), a layout, or a full spec used as ground truth. */
SPINTOMO_API spintomo_status spintomo_run(const spintomo_spec* spec, const spintomo_config* config,
                                          spintomo_result** out);
SPINTOMO_API spintomo_status spintomo_run_traces(const spintomo_spec* spec,
                                                 const spintomo_trace* const* traces,
                                                 size_t n_traces, const spintomo_config* config,
                                                 spintomo_result** out);
SPINTOMO_API void spintomo_result_free(spintomo_result* result);
SPINTOMO_API size_t spintomo_result_param_count(const spintomo_result* result);
/* `truth` is written only when *has_truth is set to 1. */
SPINTOMO_API spintomo_status spintomo_result_param(const spintomo_result* result, size_t index,
                                                   const char** name, double* estimate,
                                                   double* truth, int* has_truth);
SPINTOMO_API size_t spintomo_result_chain_count(const spintomo_result* result);
SPINTOMO_API const char* spintomo_result_chain_observable(const spintomo_result* result,
                                                          size_t chain);
SPINTOMO_API size_t spintomo_result_warning_count(const spintomo_result* result);
SPINTOMO_API const char* spintomo_result_warning(const spintomo_result* result, size_t index);
SPINTOMO_API double spintomo_result_residual_rms(const spintomo_result* result);
SPINTOMO_API spintomo_status spintomo_result_to_json(const spintomo_result* result, char** out);
SPINTOMO_API spintomo_status spintomo_result_to_csv(const spintomo_result* result, char** out);
SPINTOMO_API spintomo_status spintomo_result_fit_report_json(const spintomo_result* result,
                                                             size_t chain, char** out);
SPINTOMO_API spintomo_status spintomo_result_overlay_csv(const spintomo_result* result,
                                                         size_t chain, char** out);
/* Per-parameter errors against a full spec. */
SPINTOMO_API spintomo_status spintomo_result_compare_json(const spintomo_result* result,
                                                          const spintomo_spec* truth, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SPINTOMO_H */
