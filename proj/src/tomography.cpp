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

#include "spintomo/tomography.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "spintomo/errors.hpp"

namespace spintomo {

const char* to_string(Simulator s) {
  return s == Simulator::Spectral ? "spectral" : "statevector";
}

const char* to_string(Initializer i) {
  return i == Initializer::Pencil ? "pencil" : "periodogram";
}

Simulator simulator_from_string(std::string_view name) {
  if (name == "spectral") return Simulator::Spectral;
  if (name == "statevector") return Simulator::Statevector;
  throw SpecError("unknown simulator '" + std::string(name) + "'");
}

Initializer initializer_from_string(std::string_view name) {
  if (name == "pencil") return Initializer::Pencil;
  if (name == "periodogram") return Initializer::Periodogram;
  throw SpecError("unknown initializer '" + std::string(name) + "'");
}

void validate_config(const TomographyConfig& config) {
  if (!(config.sample_step > 0.0) || !std::isfinite(config.sample_step))
    throw SpecError("sample_step must be positive");
  if (!(config.window >= 10.0 * config.sample_step) || !std::isfinite(config.window))
    throw SpecError("window must be at least 10 sample steps");
  if (config.noise && !(config.noise->sigma >= 0.0))
    throw SpecError("noise sigma must be non-negative");
}

double TomographyResult::estimate(const ParamRef& ref) const {
  for (const auto& p : recovered)
    if (p.ref == ref) return p.estimate;
  throw ShapeMismatch("parameter " + ref.name() + " not in result");
}

namespace {

template <typename F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

ChainReport analyse_chain(const ProbedChain& pc, SignalTrace trace,
                          const TomographyConfig& config) {
  const std::size_t m = pc.chain.labels.size();
  const std::size_t order = config.taylor_order == 0 ? m : config.taylor_order;
  if (order < m)
    throw SpecError("taylor_order " + std::to_string(order) + " is below the " +
                    std::to_string(m) + " links to recover");
  ChainReport report;
  report.probe = pc.probe;
  report.labels = pc.chain.labels;
  if (trace.probe.sign < 0) {
    for (double& v : trace.values) v = -v;
    trace.probe = opposite(trace.probe);
  }
  report.trace = std::move(trace);

  TermLayout terms = term_layout(m);
  if (config.n_terms != 0) terms.n_terms = config.n_terms;
  staged("fit", [&] {
    SpectrumOptions so;
    so.include_dc = terms.dc;
    const CosineSumModel init =
        config.initializer == Initializer::Pencil
            ? estimate_spectrum_pencil(report.trace, terms.n_terms, so)
            : estimate_spectrum(report.trace, terms.n_terms, so);
    report.fit = refine_fit(report.trace, init, config.refine);
  });
  staged("invert", [&] {
    report.eta = eta_coefficients(report.fit, order);
    report.inversion = invert_couplings(std::span<const double>(report.eta).first(m),
                                        config.inversion);
    if (order > m) {
      const auto mu = mu_for_links(report.inversion.links, order);
      for (std::size_t j = m; j < order; ++j)
        report.taylor_mismatch.push_back((report.eta[j] - mu[j]) /
                                         std::max(std::abs(report.eta[j]), 1e-300));
    }
  });
  return report;
}

TomographyResult assemble(const ChainLayout& layout, std::vector<ChainReport> chains,
                          const ChainSpec* truth, bool simulated) {
  TomographyResult result;
  result.layout = layout;
  result.simulated = simulated;
  std::map<ParamRef, double> values;
  for (const auto& ch : chains) {
    result.residual_rms = std::max(result.residual_rms, ch.fit.residual_rms);
    const std::string tag = std::string("[") + to_string(ch.probe.observable) + "] ";
    for (std::size_t j : ch.inversion.clamped)
      result.warnings.push_back(tag + "squared estimate of " + ch.labels[j - 1].name() +
                                " was slightly negative and clamped to zero");
    const double norm = ch.fit.amplitude_sum();
    if (std::abs(norm - 1.0) > 1e-3) {
      std::ostringstream os;
      os << tag << "fitted amplitudes sum to " << norm << " instead of 1";
      result.warnings.push_back(os.str());
    }
    for (std::size_t k = 0; k < ch.taylor_mismatch.size(); ++k)
      if (std::abs(ch.taylor_mismatch[k]) > 1e-3) {
        std::ostringstream os;
        os << tag << "Taylor order " << (ch.labels.size() + k + 1)
           << " disagrees with the recovered chain by " << ch.taylor_mismatch[k];
        result.warnings.push_back(os.str());
      }
    for (std::size_t i = 0; i < ch.labels.size(); ++i) values[ch.labels[i]] = ch.inversion.links[i];
  }
  const bool signed_truth = truth && truth->allow_signed;
  for (const auto& ref : parameters(layout)) {
    auto it = values.find(ref);
    if (it == values.end())
      throw ShapeMismatch("no chain recovered parameter " + ref.name());
    RecoveredParameter p{ref, it->second, std::nullopt};
    if (truth) {
      p.truth = truth->value(ref);
      if (signed_truth && *p.truth < 0.0) p.estimate = -p.estimate;
    }
    result.recovered.push_back(p);
  }
  result.chains = std::move(chains);
  return result;
}

SignalTrace simulate_trace(const ChainSpec& spec, const ProbedChain& pc,
                           std::size_t chain_index, const TomographyConfig& config) {
  const auto times = sample_times(config.sample_step, config.window);
  SignalTrace trace = config.simulator == Simulator::Spectral
                          ? spectral_signal(pc.chain, times, pc.probe)
                          : statevector_signal(spec, pc.probe, config.bulk, times);
  if (config.noise) {
    NoiseSpec noise = *config.noise;
    noise.seed += chain_index;
    trace = add_noise(trace, noise);
  }
  return trace;
}

}  // namespace

TomographyResult run_tomography(const ChainSpec& spec, const TomographyConfig& config) {
  const auto chains = staged("spec", [&] {
    validate_config(config);
    return flux_chains(spec);
  });
  std::vector<ChainReport> reports;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    SignalTrace trace = staged("simulate", [&] { return simulate_trace(spec, chains[i], i, config); });
    reports.push_back(analyse_chain(chains[i], std::move(trace), config));
  }
  return staged("map", [&] { return assemble(spec.layout(), std::move(reports), &spec, true); });
}

TomographyResult run_tomography(const ChainLayout& layout,
                                std::span<const SignalTrace> traces,
                                const TomographyConfig& config, const ChainSpec* truth) {
  const auto chains = staged("spec", [&] {
    validate_config(config);
    if (truth) {
      validate_spec(*truth);
      if (!(truth->layout() == layout))
        throw ShapeMismatch("ground-truth spec does not match the layout");
    }
    auto out = flux_layout(layout);
    if (traces.size() != out.size())
      throw SpecError("model " + std::string(to_string(layout.model)) + " needs " +
                      std::to_string(out.size()) + " trace(s), got " +
                      std::to_string(traces.size()));
    return out;
  });
  std::vector<ChainReport> reports;
  for (const auto& pc : chains) {
    const SignalTrace* match = nullptr;
    for (const auto& tr : traces)
      if (tr.probe.observable == pc.probe.observable) {
        if (match)
          throw SpecError(std::string("more than one trace for observable ") +
                          to_string(pc.probe.observable));
        match = &tr;
      }
    if (!match)
      throw SpecError(std::string("missing trace for observable ") +
                      to_string(pc.probe.observable));
    staged("spec", [&] { check_trace(*match); });
    reports.push_back(analyse_chain(pc, *match, config));
  }
  return staged("map", [&] { return assemble(layout, std::move(reports), truth, false); });
}

ErrorReport compare_to_truth(const TomographyResult& result, const ChainSpec& spec) {
  const auto refs = parameters(spec.layout());
  if (refs.size() != result.recovered.size())
    throw ShapeMismatch("result has " + std::to_string(result.recovered.size()) +
                        " parameters, spec has " + std::to_string(refs.size()));
  ErrorReport report;
  double ss = 0.0;
  for (const auto& ref : refs) {
    const double est = result.estimate(ref);
    const double truth = spec.value(ref);
    ErrorEntry e{ref, est, truth, std::abs(est - truth), 0.0};
    e.rel_error = e.abs_error / std::abs(truth);
    if (e.abs_error > report.max_abs || report.entries.empty()) {
      report.max_abs = e.abs_error;
      report.worst = ref;
    }
    report.max_rel = std::max(report.max_rel, e.rel_error);
    ss += e.abs_error * e.abs_error;
    report.entries.push_back(e);
  }
  report.rms_abs = std::sqrt(ss / static_cast<double>(report.entries.size()));
  return report;
}

}  // namespace spintomo
