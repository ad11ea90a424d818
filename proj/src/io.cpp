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

#include "spintomo/io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "spintomo/errors.hpp"

namespace spintomo::io {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accepts "taylor_order" and "taylor-order".
const json* find_key(const json& j, const std::string& key) {
  if (auto it = j.find(key); it != j.end()) return &*it;
  std::string dashed = key;
  for (char& c : dashed)
    if (c == '_') c = '-';
  if (auto it = j.find(dashed); it != j.end()) return &*it;
  return nullptr;
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw IoError(std::string("field '") + what + "' has the wrong type");
  }
}

json probe_json(const Probe& p) {
  return {{"observable", to_string(p.observable)},
          {"preparation", to_string(p.preparation)},
          {"sign", p.sign}};
}

Probe probe_from(const json& j) {
  if (!j.is_object()) throw IoError("probe must be an object");
  if (!j.contains("preparation")) throw IoError("probe needs a preparation");
  Probe p = probe_for(preparation_from_string(get_as<std::string>(j["preparation"], "preparation")));
  if (j.contains("observable") &&
      observable_from_string(get_as<std::string>(j["observable"], "observable")) != p.observable)
    throw SpecError("probe observable does not match its preparation");
  if (j.contains("sign") && get_as<int>(j["sign"], "sign") != p.sign)
    throw SpecError("probe sign does not match its preparation");
  return p;
}

json fit_json(const CosineSumModel& fit) {
  json terms = json::array();
  for (const auto& t : fit.terms) terms.push_back({{"A", t.amplitude}, {"omega", t.omega}});
  return {{"terms", terms},
          {"dc", fit.dc ? json(*fit.dc) : json(nullptr)},
          {"residual_rms", fit.residual_rms},
          {"iterations", fit.iterations}};
}

ChainLayout layout_from(const json& j) {
  if (!j.is_object()) throw IoError("spec must be a JSON object");
  if (!j.contains("model") || !j.contains("n_spins"))
    throw IoError("spec needs 'model' and 'n_spins'");
  ChainLayout layout;
  layout.model = model_from_string(get_as<std::string>(j["model"], "model"));
  const auto n = get_as<long long>(j["n_spins"], "n_spins");
  if (n < 2) throw SpecError("n_spins must be at least 2 (got " + std::to_string(n) + ")");
  layout.n_spins = static_cast<std::size_t>(n);
  return layout;
}

}  // namespace

ChainSpec spec_from_json(std::string_view text) {
  const json j = parse(text);
  const ChainLayout layout = layout_from(j);
  ChainSpec spec;
  spec.model = layout.model;
  spec.n_spins = layout.n_spins;
  if (j.contains("allow_signed")) spec.allow_signed = get_as<bool>(j["allow_signed"], "allow_signed");
  if (!j.contains("couplings") || !j["couplings"].is_object())
    throw IoError("spec needs a 'couplings' object");
  for (const auto& [key, arr] : j["couplings"].items()) {
    const Family f = family_from_string(key);
    spec.family(f) = get_as<std::vector<double>>(arr, key.c_str());
  }
  return validate_spec(spec);
}

std::string spec_to_json(const ChainSpec& spec) {
  json couplings = json::object();
  for (Family f : {Family::J, Family::JX, Family::JY, Family::JZ, Family::B})
    if (family_size(spec.layout(), f) > 0) couplings[to_string(f)] = spec.family(f);
  json j = {{"model", to_string(spec.model)},
            {"n_spins", spec.n_spins},
            {"couplings", couplings},
            {"allow_signed", spec.allow_signed}};
  return j.dump(2);
}

ChainLayout layout_from_json(std::string_view text) { return layout_from(parse(text)); }

bool json_has_couplings(std::string_view text) { return parse(text).contains("couplings"); }

TomographyConfig config_from_json(std::string_view text, const TomographyConfig& base) {
  const json j = parse(text);
  if (!j.is_object()) throw IoError("config must be a JSON object");
  TomographyConfig c = base;
  if (auto v = find_key(j, "step")) c.sample_step = get_as<double>(*v, "step");
  if (auto v = find_key(j, "window")) c.window = get_as<double>(*v, "window");
  if (auto v = find_key(j, "taylor_order")) c.taylor_order = get_as<std::size_t>(*v, "taylor_order");
  if (auto v = find_key(j, "n_terms")) c.n_terms = get_as<std::size_t>(*v, "n_terms");
  std::optional<std::uint64_t> seed;
  if (auto v = find_key(j, "seed")) seed = get_as<std::uint64_t>(*v, "seed");
  if (auto v = find_key(j, "noise_sigma")) {
    const double sigma = get_as<double>(*v, "noise_sigma");
    if (sigma > 0.0 || c.noise) c.noise = NoiseSpec{sigma, c.noise ? c.noise->seed : 0};
    if (sigma == 0.0) c.noise.reset();
  }
  if (seed) {
    if (c.noise) c.noise->seed = *seed;
    c.bulk.seed = *seed;
  }
  if (auto v = find_key(j, "simulator"))
    c.simulator = simulator_from_string(get_as<std::string>(*v, "simulator"));
  if (auto v = find_key(j, "initializer"))
    c.initializer = initializer_from_string(get_as<std::string>(*v, "initializer"));
  if (auto v = find_key(j, "bulk")) {
    if (auto k = find_key(*v, "kind")) {
      const auto kind = get_as<std::string>(*k, "bulk.kind");
      if (kind == "product") c.bulk.kind = BulkState::Kind::Product;
      else if (kind == "random_pure") c.bulk.kind = BulkState::Kind::RandomPure;
      else if (kind == "maximally_mixed") c.bulk.kind = BulkState::Kind::MaximallyMixed;
      else throw SpecError("unknown bulk kind '" + kind + "'");
    }
    if (auto s = find_key(*v, "seed")) c.bulk.seed = get_as<std::uint64_t>(*s, "bulk.seed");
    if (auto s = find_key(*v, "samples")) c.bulk.samples = get_as<std::size_t>(*s, "bulk.samples");
  }
  return c;
}

std::string config_to_json(const TomographyConfig& c) {
  const char* kind = "explicit";
  switch (c.bulk.kind) {
    case BulkState::Kind::Product: kind = "product"; break;
    case BulkState::Kind::RandomPure: kind = "random_pure"; break;
    case BulkState::Kind::MaximallyMixed: kind = "maximally_mixed"; break;
    case BulkState::Kind::Explicit: break;
  }
  json j = {{"step", c.sample_step},
            {"window", c.window},
            {"taylor_order", c.taylor_order},
            {"n_terms", c.n_terms},
            {"noise_sigma", c.noise ? c.noise->sigma : 0.0},
            {"seed", c.noise ? c.noise->seed : c.bulk.seed},
            {"simulator", to_string(c.simulator)},
            {"initializer", to_string(c.initializer)},
            {"bulk", {{"kind", kind}, {"seed", c.bulk.seed}, {"samples", c.bulk.samples}}}};
  return j.dump(2);
}

std::string trace_to_csv(const SignalTrace& trace) {
  std::string out = "t,value\n";
  for (std::size_t k = 0; k < trace.size(); ++k)
    out += fmt17(trace.times[k]) + ',' + fmt17(trace.values[k]) + '\n';
  return out;
}

SignalTrace trace_from_csv(std::string_view text, const Probe& probe) {
  SignalTrace trace;
  trace.probe = probe;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line != "t,value") throw IoError("trace CSV must start with header 't,value'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("trace CSV line " + std::to_string(lineno) + " has no comma");
    try {
      std::size_t used = 0;
      const std::string ts = line.substr(0, comma), vs = line.substr(comma + 1);
      const double t = std::stod(ts, &used);
      if (used != ts.size()) throw std::invalid_argument("t");
      const double v = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument("value");
      trace.times.push_back(t);
      trace.values.push_back(v);
    } catch (const std::logic_error&) {
      throw IoError("trace CSV line " + std::to_string(lineno) + " is not numeric");
    }
  }
  if (!header_seen) throw IoError("trace CSV is empty");
  check_trace(trace);
  return trace;
}

std::string trace_metadata_to_json(const TraceMetadata& meta) {
  json j = {{"probe", probe_json(meta.probe)}, {"source", meta.source}};
  if (meta.layout) {
    j["model"] = to_string(meta.layout->model);
    j["n_spins"] = meta.layout->n_spins;
  }
  j["noise"] = meta.noise ? json{{"sigma", meta.noise->sigma}, {"seed", meta.noise->seed}}
                          : json(nullptr);
  return j.dump(2);
}

TraceMetadata trace_metadata_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("probe")) throw IoError("trace metadata needs a 'probe'");
  TraceMetadata meta;
  meta.probe = probe_from(j["probe"]);
  if (j.contains("model") && j.contains("n_spins")) meta.layout = layout_from(j);
  if (j.contains("noise") && j["noise"].is_object())
    meta.noise = NoiseSpec{get_as<double>(j["noise"].value("sigma", json(0.0)), "noise.sigma"),
                           get_as<std::uint64_t>(j["noise"].value("seed", json(0)), "noise.seed")};
  if (j.contains("source")) meta.source = get_as<std::string>(j["source"], "source");
  return meta;
}

std::string fit_report_json(const ChainReport& chain) {
  json j = fit_json(chain.fit);
  j["probe"] = probe_json(chain.probe);
  return j.dump(2);
}

std::string overlay_csv(const ChainReport& chain) {
  std::string out = "t,measured,fitted\n";
  for (std::size_t k = 0; k < chain.trace.size(); ++k) {
    const double t = chain.trace.times[k];
    out += fmt17(t) + ',' + fmt17(chain.trace.values[k]) + ',' + fmt17(chain.fit.evaluate(t)) + '\n';
  }
  return out;
}

std::string result_to_json(const TomographyResult& r) {
  json recovered = json::array();
  for (const auto& p : r.recovered) {
    json e = {{"name", p.ref.name()}, {"estimate", p.estimate}};
    if (p.truth) {
      e["truth"] = *p.truth;
      e["abs_error"] = std::abs(p.estimate - *p.truth);
    }
    recovered.push_back(e);
  }
  json chains = json::array();
  for (const auto& ch : r.chains) {
    json labels = json::array();
    for (const auto& l : ch.labels) labels.push_back(l.name());
    chains.push_back({{"probe", probe_json(ch.probe)},
                      {"labels", labels},
                      {"fit", fit_json(ch.fit)},
                      {"eta", ch.eta},
                      {"radicands", ch.inversion.radicands},
                      {"clamped", ch.inversion.clamped},
                      {"taylor_mismatch", ch.taylor_mismatch},
                      {"samples", ch.trace.size()}});
  }
  json j = {{"model", to_string(r.layout.model)},
            {"n_spins", r.layout.n_spins},
            {"mode", r.simulated ? "simulate" : "ingest"},
            {"recovered", recovered},
            {"chains", chains},
            {"residual_rms", r.residual_rms},
            {"warnings", r.warnings}};
  return j.dump(2);
}

std::string result_to_csv(const TomographyResult& r) {
  std::string out = "parameter,estimate,truth,abs_error\n";
  for (const auto& p : r.recovered) {
    out += p.ref.name() + ',' + fmt17(p.estimate) + ',';
    if (p.truth) out += fmt17(*p.truth) + ',' + fmt17(std::abs(p.estimate - *p.truth));
    else out += ',';
    out += '\n';
  }
  return out;
}

std::string error_report_json(const ErrorReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"name", e.ref.name()},
                       {"estimate", e.estimate},
                       {"truth", e.truth},
                       {"abs_error", e.abs_error},
                       {"rel_error", e.rel_error}});
  json j = {{"entries", entries},
            {"max_abs", report.max_abs},
            {"rms_abs", report.rms_abs},
            {"max_rel", report.max_rel},
            {"worst", report.worst.name()}};
  return j.dump(2);
}

std::string probe_to_json(const Probe& probe) { return probe_json(probe).dump(); }

}  // namespace spintomo::io
