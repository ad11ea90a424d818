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

#ifndef SPINTOMO_CHAIN_MODEL_HPP
#define SPINTOMO_CHAIN_MODEL_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spintomo {

enum class Model { XX, XY, IsingTransverse };

// Parameter families. XX uses J; XY uses JX/JY; the transverse Ising model
// uses JZ for bonds and B for the local fields.
enum class Family { J, JX, JY, JZ, B };

const char* to_string(Model model);
const char* to_string(Family family);
Model model_from_string(std::string_view name);
Family family_from_string(std::string_view name);

// A named Hamiltonian parameter, e.g. JX_3. Indices are 1-based like the
// site labels.
struct ParamRef {
  Family family = Family::J;
  std::size_t index = 1;

  std::string name() const;
  friend bool operator==(const ParamRef&, const ParamRef&) = default;
  friend auto operator<=>(const ParamRef&, const ParamRef&) = default;
};

ParamRef param_from_name(std::string_view name);

struct ChainLayout {
  Model model = Model::XX;
  std::size_t n_spins = 2;
  friend bool operator==(const ChainLayout&, const ChainLayout&) = default;
};

struct ChainSpec {
  Model model = Model::XX;
  std::size_t n_spins = 2;
  // Only the arrays belonging to `model` may be non-empty.
  std::vector<double> j;
  std::vector<double> jx;
  std::vector<double> jy;
  std::vector<double> jz;
  std::vector<double> b;
  bool allow_signed = false;

  ChainLayout layout() const { return {model, n_spins}; }
  const std::vector<double>& family(Family f) const;
  std::vector<double>& family(Family f);
  double value(const ParamRef& ref) const;
};

// Every parameter of the layout, in canonical order (family by family).
std::vector<ParamRef> parameters(const ChainLayout& layout);
std::size_t family_size(const ChainLayout& layout, Family family);

ChainSpec validate_spec(const ChainSpec& spec);

enum class Observable { X1, Y1, Z1 };
enum class Preparation { PlusX, MinusX, PlusY, MinusY, Zero, One };

const char* to_string(Observable o);
const char* to_string(Preparation p);
Observable observable_from_string(std::string_view name);
Preparation preparation_from_string(std::string_view name);

struct Probe {
  Observable observable = Observable::X1;
  Preparation preparation = Preparation::PlusX;
  int sign = +1;

  friend bool operator==(const Probe&, const Probe&) = default;
};

// The consistent probe for a spin-1 preparation.
Probe probe_for(Preparation preparation);
// Same observable, opposite eigenstate.
Probe opposite(const Probe& probe);
// Throws SpecError if the observable/preparation/sign triple is inconsistent.
void check_probe(const Probe& probe);

// Effective chain of link strengths seen by the probed spin-1 operator.
struct FluxChain {
  std::vector<double> links;
  std::vector<ParamRef> labels;

  std::size_t size() const { return links.size(); }
  double max_abs_link() const;
};

// Throws SpecError unless m >= 1, links nonzero and labels match in length.
void check_chain(const FluxChain& chain);

struct ProbedChain {
  FluxChain chain;
  Probe probe;
};

// The chains and probes for a layout with empty link values; labels only.
std::vector<ProbedChain> flux_layout(const ChainLayout& layout);

// Reduces a validated spec to the flux chains that together determine every
// parameter. Link values carry the spec's signs.
std::vector<ProbedChain> flux_chains(const ChainSpec& spec);

// Builds a spec of the given layout from named values; every parameter of
// the layout must be assigned exactly once.
ChainSpec spec_from_values(const ChainLayout& layout,
                           const std::vector<std::pair<ParamRef, double>>& values,
                           bool allow_signed = false);

}  // namespace spintomo

#endif  // SPINTOMO_CHAIN_MODEL_HPP
