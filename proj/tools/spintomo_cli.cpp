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

// spintomo command-line front end. Talks to the library only through the C
// API in spintomo.h.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spintomo/spintomo.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;

// Carries an exit code and message up to main.
struct Failure {
  int code;
  std::string message;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check(spintomo_status st) {
  if (st == SPINTOMO_OK) return;
  std::string msg = spintomo_last_error();
  const std::string stage = spintomo_last_error_stage();
  if (!stage.empty()) msg = "[" + stage + "] " + msg;
  throw Failure{spintomo_status_is_input_error(st) ? kExitInput : kExitPipeline, msg};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  spintomo_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Deleters for the opaque handles.
struct SpecDel { void operator()(spintomo_spec* p) const { spintomo_spec_free(p); } };
struct ConfigDel { void operator()(spintomo_config* p) const { spintomo_config_free(p); } };
struct TraceDel { void operator()(spintomo_trace* p) const { spintomo_trace_free(p); } };
struct ResultDel { void operator()(spintomo_result* p) const { spintomo_result_free(p); } };
using SpecPtr = std::unique_ptr<spintomo_spec, SpecDel>;
using ConfigPtr = std::unique_ptr<spintomo_config, ConfigDel>;
using TracePtr = std::unique_ptr<spintomo_trace, TraceDel>;
using ResultPtr = std::unique_ptr<spintomo_result, ResultDel>;

struct Options {
  std::string config_path;
  std::string spec_path;
  std::vector<std::string> trace_paths;
  std::optional<double> step, window, noise_sigma;
  std::optional<std::size_t> taylor_order, n_terms;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> initializer, simulator;
  std::string out_dir = ".";
  std::string format = "json";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "JSON config file; flags override it");
  cmd->add_option("--step", o.step, "sampling step in units of 1/J");
  cmd->add_option("--window", o.window, "sampling window in units of 1/J");
  cmd->add_option("--taylor-order", o.taylor_order, "Taylor coefficients matched per chain");
  cmd->add_option("--n-terms", o.n_terms, "cosine terms per chain");
  cmd->add_option("--noise-sigma", o.noise_sigma, "Gaussian noise added to simulated traces");
  cmd->add_option("--seed", o.seed, "seed for noise and random bulk states");
  cmd->add_option("--initializer", o.initializer, "pencil or periodogram");
  cmd->add_option("--simulator", o.simulator, "spectral or statevector");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--format", o.format, "result format")->check(CLI::IsMember({"json", "csv"}));
}

ConfigPtr make_config(const Options& o) {
  spintomo_config* raw = nullptr;
  check(spintomo_config_create(&raw));
  ConfigPtr cfg(raw);
  if (!o.config_path.empty()) check(spintomo_config_merge_json(cfg.get(), read_file(o.config_path).c_str()));
  if (o.seed) check(spintomo_config_set_seed(cfg.get(), *o.seed));
  if (o.step) check(spintomo_config_set_step(cfg.get(), *o.step));
  if (o.window) check(spintomo_config_set_window(cfg.get(), *o.window));
  if (o.taylor_order) check(spintomo_config_set_taylor_order(cfg.get(), *o.taylor_order));
  if (o.n_terms) check(spintomo_config_set_n_terms(cfg.get(), *o.n_terms));
  if (o.noise_sigma) check(spintomo_config_set_noise(cfg.get(), *o.noise_sigma));
  if (o.initializer) check(spintomo_config_set_initializer(cfg.get(), o.initializer->c_str()));
  if (o.simulator) check(spintomo_config_set_simulator(cfg.get(), o.simulator->c_str()));
  return cfg;
}

SpecPtr load_spec(const std::string& path) {
  spintomo_spec* raw = nullptr;
  check(spintomo_spec_from_json(read_file(path).c_str(), &raw));
  return SpecPtr(raw);
}

// Sidecar for a.csv is a.meta.json.
fs::path sidecar(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".meta.json");
  return p;
}

class Writer {
 public:
  explicit Writer(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Failure{kExitInput, "cannot create output directory " + dir + ": " + ec.message()};
  }

  fs::path write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw Failure{kExitInput, "cannot write " + p.string()};
    outputs_.push_back(p.string());
    return p;
  }

  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  fs::path dir_;
  std::vector<std::string> outputs_;
};

void write_manifest(Writer& w, const std::string& command, const Options& o,
                    const spintomo_config* cfg, const std::vector<std::string>& inputs,
                    const std::string& started) {
  json m;
  m["tool"] = "spintomo";
  m["version"] = spintomo_version();
  m["command"] = command;
  m["config_path"] = o.config_path.empty() ? json(nullptr) : json(o.config_path);
  m["config"] = json::parse(take([&] {
    char* s = nullptr;
    check(spintomo_config_to_json(cfg, &s));
    return s;
  }()));
  m["seed"] = m["config"]["seed"];
  m["inputs"] = inputs;
  m["outputs"] = w.outputs();
  m["format"] = o.format;
  m["started"] = started;
  m["finished"] = utc_now();
  w.write("manifest.json", m.dump(2) + "\n");
}

std::string lower_observable(const char* obs) {
  std::string s = obs ? obs : "chain";
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int cmd_simulate(const Options& o) {
  const std::string started = utc_now();
  if (o.spec_path.empty()) throw Failure{kExitInput, "simulate needs --spec"};
  auto spec = load_spec(o.spec_path);
  if (!spintomo_spec_has_couplings(spec.get()))
    throw Failure{kExitInput, "spec " + o.spec_path + " has no couplings to simulate"};
  auto cfg = make_config(o);
  Writer w(o.out_dir);
  for (std::size_t i = 0; i < spintomo_spec_probe_count(spec.get()); ++i) {
    spintomo_trace* raw = nullptr;
    check(spintomo_simulate(spec.get(), cfg.get(), i, &raw));
    TracePtr tr(raw);
    const std::string stem = "trace_" + lower_observable(spintomo_spec_probe_observable(spec.get(), i));
    char* s = nullptr;
    check(spintomo_trace_to_csv(tr.get(), &s));
    const auto csv = w.write(stem + ".csv", take(s));
    check(spintomo_trace_metadata_json(tr.get(), &s));
    w.write(stem + ".meta.json", take(s) + "\n");
    std::cout << "wrote " << csv.string() << " (" << spintomo_trace_size(tr.get()) << " samples)\n";
  }
  write_manifest(w, "simulate", o, cfg.get(), {o.spec_path}, started);
  return 0;
}

void print_table(const spintomo_result* r) {
  std::printf("%-10s %14s %14s %12s\n", "parameter", "estimate", "truth", "abs_error");
  for (std::size_t i = 0; i < spintomo_result_param_count(r); ++i) {
    const char* name = nullptr;
    double est = 0.0, truth = 0.0;
    int has_truth = 0;
    check(spintomo_result_param(r, i, &name, &est, &truth, &has_truth));
    if (has_truth)
      std::printf("%-10s %14.6f %14.6f %12.3e\n", name, est, truth, std::abs(est - truth));
    else
      std::printf("%-10s %14.6f %14s %12s\n", name, est, "-", "-");
  }
  std::printf("residual_rms %.3e\n", spintomo_result_residual_rms(r));
  for (std::size_t i = 0; i < spintomo_result_warning_count(r); ++i)
    std::printf("warning: %s\n", spintomo_result_warning(r, i));
}

int cmd_run(const Options& o) {
  const std::string started = utc_now();
  if (o.spec_path.empty() && o.trace_paths.empty()) throw Failure{kExitInput, "run needs --spec or --trace"};
  SpecPtr spec;
  std::vector<std::string> inputs;
  if (!o.spec_path.empty()) {
    spec = load_spec(o.spec_path);
    inputs.push_back(o.spec_path);
  }
  auto cfg = make_config(o);

  spintomo_result* raw = nullptr;
  if (o.trace_paths.empty()) {
    if (!spintomo_spec_has_couplings(spec.get()))
      throw Failure{kExitInput, "spec " + o.spec_path + " has no couplings; pass --trace to ingest data"};
    check(spintomo_run(spec.get(), cfg.get(), &raw));
  } else {
    std::vector<TracePtr> owned;
    std::vector<const spintomo_trace*> traces;
    for (const auto& path : o.trace_paths) {
      const auto meta = sidecar(path);
      const std::string csv = read_file(path);
      if (!fs::exists(meta)) throw Failure{kExitInput, "missing trace metadata " + meta.string()};
      spintomo_trace* t = nullptr;
      check(spintomo_trace_from_csv(csv.c_str(), read_file(meta.string()).c_str(), &t));
      owned.emplace_back(t);
      traces.push_back(t);
      inputs.push_back(path);
      inputs.push_back(meta.string());
    }
    check(spintomo_run_traces(spec.get(), traces.data(), traces.size(), cfg.get(), &raw));
  }
  ResultPtr result(raw);

  Writer w(o.out_dir);
  char* s = nullptr;
  if (o.format == "csv") check(spintomo_result_to_csv(result.get(), &s));
  else check(spintomo_result_to_json(result.get(), &s));
  w.write("result." + o.format, take(s));
  for (std::size_t c = 0; c < spintomo_result_chain_count(result.get()); ++c) {
    const std::string obs = lower_observable(spintomo_result_chain_observable(result.get(), c));
    check(spintomo_result_fit_report_json(result.get(), c, &s));
    w.write("fit_" + obs + ".json", take(s) + "\n");
    check(spintomo_result_overlay_csv(result.get(), c, &s));
    w.write("overlay_" + obs + ".csv", take(s));
  }
  if (spec && spintomo_spec_has_couplings(spec.get())) {
    check(spintomo_result_compare_json(result.get(), spec.get(), &s));
    w.write("errors.json", take(s) + "\n");
  }
  print_table(result.get());
  write_manifest(w, "run", o, cfg.get(), inputs, started);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian tomography of spin chains from one boundary spin"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(spintomo_version()));

  Options sim_opts, run_opts;
  auto* sim = app.add_subcommand("simulate", "write one boundary-spin trace per required probe");
  sim->add_option("--spec", sim_opts.spec_path, "chain spec JSON")->required();
  add_common(sim, sim_opts);

  auto* run = app.add_subcommand("run", "fit, invert and report recovered couplings");
  run->add_option("--spec", run_opts.spec_path, "chain spec JSON (ground truth or layout)");
  run->add_option("--trace", run_opts.trace_paths, "trace CSV with a .meta.json sidecar; repeatable");
  add_common(run, run_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*sim) return cmd_simulate(sim_opts);
    return cmd_run(run_opts);
  } catch (const Failure& f) {
    std::cerr << "spintomo: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "spintomo: " << e.what() << "\n";
    return kExitPipeline;
  }
}
