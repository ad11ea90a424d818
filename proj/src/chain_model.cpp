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

#include "spintomo/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spintomo/errors.hpp"

namespace spintomo {

const char* to_string(Model model) {
  switch (model) {
    case Model::XX: return "xx";
    case Model::XY: return "xy";
    case Model::IsingTransverse: return "ising_transverse";
  }
  return "?";
}

const char* to_string(Family family) {
  switch (family) {
    case Family::J: return "J";
    case Family::JX: return "JX";
    case Family::JY: return "JY";
    case Family::JZ: return "JZ";
    case Family::B: return "B";
  }
  return "?";
}

Model model_from_string(std::string_view name) {
  if (name == "xx") return Model::XX;
  if (name == "xy") return Model::XY;
  if (name == "ising_transverse") return Model::IsingTransverse;
  throw SpecError("unknown model '" + std::string(name) + "'");
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::J, Family::JX, Family::JY, Family::JZ, Family::B})
    if (name == to_string(f)) return f;
  throw SpecError("unknown parameter family '" + std::string(name) + "'");
}

std::string ParamRef::name() const {
  return std::string(to_string(family)) + "_" + std::to_string(index);
}

ParamRef param_from_name(std::string_view name) {
  auto sep = name.find('_');
  if (sep == std::string_view::npos || sep + 1 == name.size())
    throw SpecError("malformed parameter name '" + std::string(name) + "'");
  ParamRef ref;
  ref.family = family_from_string(name.substr(0, sep));
  std::size_t idx = 0;
  for (char ch : name.substr(sep + 1)) {
    if (ch < '0' || ch > '9')
      throw SpecError("malformed parameter name '" + std::string(name) + "'");
    idx = idx * 10 + static_cast<std::size_t>(ch - '0');
  }
  if (idx == 0) throw SpecError("parameter indices are 1-based");
  ref.index = idx;
  return ref;
}

const std::vector<double>& ChainSpec::family(Family f) const {
  switch (f) {
    case Family::J: return j;
    case Family::JX: return jx;
    case Family::JY: return jy;
    case Family::JZ: return jz;
    case Family::B: return b;
  }
  return j;
}

std::vector<double>& ChainSpec::family(Family f) {
  return const_cast<std::vector<double>&>(std::as_const(*this).family(f));
}

double ChainSpec::value(const ParamRef& ref) const {
  const auto& arr = family(ref.family);
  if (ref.index == 0 || ref.index > arr.size())
    throw SpecError("parameter " + ref.name() + " not present in spec");
  return arr[ref.index - 1];
}

namespace {

std::vector<Family> families_of(Model model) {
  switch (model) {
    case Model::XX: return {Family::J};
    case Model::XY: return {Family::JX, Family::JY};
    case Model::IsingTransverse: return {Family::JZ, Family::B};
  }
  return {};
}

}  // namespace

std::size_t family_size(const ChainLayout& layout, Family family) {
  auto fams = families_of(layout.model);
  if (std::find(fams.begin(), fams.end(), family) == fams.end()) return 0;
  return family == Family::B ? layout.n_spins : layout.n_spins - 1;
}

std::vector<ParamRef> parameters(const ChainLayout& layout) {
  std::vector<ParamRef> out;
  for (Family f : families_of(layout.model))
    for (std::size_t i = 1; i <= family_size(layout, f); ++i) out.push_back({f, i});
  return out;
}

ChainSpec validate_spec(const ChainSpec& spec) {
  if (spec.n_spins < 2)
    throw SpecError("n_spins must be at least 2 (got " +
                    std::to_string(spec.n_spins) + ")");
  const ChainLayout layout = spec.layout();
  for (Family f : {Family::J, Family::JX, Family::JY, Family::JZ, Family::B}) {
    const auto& arr = spec.family(f);
    const std::size_t want = family_size(layout, f);
    if (arr.size() != want)
      throw SpecError("length mismatch: " + std::string(to_string(f)) + " has " +
                      std::to_string(arr.size()) + " entries, model " +
                      to_string(spec.model) + " with n_spins=" +
                      std::to_string(spec.n_spins) + " requires " +
                      std::to_string(want));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const double v = arr[i];
      const std::string name = ParamRef{f, i + 1}.name();
      if (!std::isfinite(v)) throw SpecError(name + " is not finite");
      if (spec.allow_signed) {
        if (v == 0.0) throw SpecError(name + " must be nonzero");
      } else if (!(v > 0.0)) {
        throw SpecError(name + " must be strictly positive (set allow_signed "
                               "for signed couplings)");
      }
    }
  }
  return spec;
}

const char* to_string(Observable o) {
  switch (o) {
    case Observable::X1: return "X1";
    case Observable::Y1: return "Y1";
    case Observable::Z1: return "Z1";
  }
  return "?";
}

const char* to_string(Preparation p) {
  switch (p) {
    case Preparation::PlusX: return "plus_x";
    case Preparation::MinusX: return "minus_x";
    case Preparation::PlusY: return "plus_y";
    case Preparation::MinusY: return "minus_y";
    case Preparation::Zero: return "zero";
    case Preparation::One: return "one";
  }
  return "?";
}

Observable observable_from_string(std::string_view name) {
  for (Observable o : {Observable::X1, Observable::Y1, Observable::Z1})
    if (name == to_string(o)) return o;
  throw SpecError("unknown observable '" + std::string(name) + "'");
}

Preparation preparation_from_string(std::string_view name) {
  for (Preparation p : {Preparation::PlusX, Preparation::MinusX, Preparation::PlusY,
                        Preparation::MinusY, Preparation::Zero, Preparation::One})
    if (name == to_string(p)) return p;
  throw SpecError("unknown preparation '" + std::string(name) + "'");
}

Probe probe_for(Preparation preparation) {
  switch (preparation) {
    case Preparation::PlusX: return {Observable::X1, preparation, +1};
    case Preparation::MinusX: return {Observable::X1, preparation, -1};
    case Preparation::PlusY: return {Observable::Y1, preparation, +1};
    case Preparation::MinusY: return {Observable::Y1, preparation, -1};
    case Preparation::Zero: return {Observable::Z1, preparation, +1};
    case Preparation::One: return {Observable::Z1, preparation, -1};
  }
  return {};
}

Probe opposite(const Probe& probe) {
  static const std::map<Preparation, Preparation> flip = {
      {Preparation::PlusX, Preparation::MinusX}, {Preparation::MinusX, Preparation::PlusX},
      {Preparation::PlusY, Preparation::MinusY}, {Preparation::MinusY, Preparation::PlusY},
      {Preparation::Zero, Preparation::One},     {Preparation::One, Preparation::Zero}};
  return probe_for(flip.at(probe.preparation));
}

void check_probe(const Probe& probe) {
  if (!(probe == probe_for(probe.preparation)))
    throw SpecError(std::string("inconsistent probe: observable ") +
                    to_string(probe.observable) + " with preparation " +
                    to_string(probe.preparation) + " and sign " +
                    std::to_string(probe.sign));
}

double FluxChain::max_abs_link() const {
  double m = 0.0;
  for (double c : links) m = std::max(m, std::abs(c));
  return m;
}

void check_chain(const FluxChain& chain) {
  if (chain.links.empty()) throw SpecError("flux chain needs at least one link");
  if (chain.labels.size() != chain.links.size())
    throw SpecError("flux chain labels do not match links");
  for (std::size_t i = 0; i < chain.links.size(); ++i)
    if (chain.links[i] == 0.0 || !std::isfinite(chain.links[i]))
      throw SpecError("flux chain link " + std::to_string(i + 1) +
                      " must be finite and nonzero");
}

std::vector<ProbedChain> flux_layout(const ChainLayout& layout) {
  if (layout.n_spins < 2) throw SpecError("n_spins must be at least 2");
  const std::size_t n = layout.n_spins;
  std::vector<ProbedChain> out;
  switch (layout.model) {
    case Model::XX: {
      ProbedChain pc{{}, probe_for(Preparation::PlusX)};
      for (std::size_t i = 1; i < n; ++i) pc.chain.labels.push_back({Family::J, i});
      out.push_back(pc);
      break;
    }
    case Model::XY: {
      // X1 commutes with the X1X2 bond, so its operator leaves site 1 through
      // the YY bond first; Y1 likewise leaves through XX.
      ProbedChain px{{}, probe_for(Preparation::PlusX)};
      ProbedChain py{{}, probe_for(Preparation::PlusY)};
      for (std::size_t i = 1; i < n; ++i) {
        const bool odd = (i % 2) == 1;
        px.chain.labels.push_back({odd ? Family::JY : Family::JX, i});
        py.chain.labels.push_back({odd ? Family::JX : Family::JY, i});
      }
      out.push_back(px);
      out.push_back(py);
      break;
    }
    case Model::IsingTransverse: {
      ProbedChain pc{{}, probe_for(Preparation::Zero)};
      for (std::size_t i = 1; i <= n; ++i) {
        pc.chain.labels.push_back({Family::B, i});
        if (i < n) pc.chain.labels.push_back({Family::JZ, i});
      }
      out.push_back(pc);
      break;
    }
  }
  return out;
}

std::vector<ProbedChain> flux_chains(const ChainSpec& spec) {
  validate_spec(spec);
  auto out = flux_layout(spec.layout());
  for (auto& pc : out) {
    pc.chain.links.clear();
    for (const auto& ref : pc.chain.labels) pc.chain.links.push_back(spec.value(ref));
  }
  return out;
}

ChainSpec spec_from_values(const ChainLayout& layout,
                           const std::vector<std::pair<ParamRef, double>>& values,
                           bool allow_signed) {
  ChainSpec spec;
  spec.model = layout.model;
  spec.n_spins = layout.n_spins;
  spec.allow_signed = allow_signed;
  std::map<ParamRef, int> seen;
  for (const auto& ref : parameters(layout)) {
    spec.family(ref.family).assign(family_size(layout, ref.family), 0.0);
    seen[ref] = 0;
  }
  for (const auto& [ref, v] : values) {
    auto it = seen.find(ref);
    if (it == seen.end())
      throw ShapeMismatch("parameter " + ref.name() + " does not belong to the layout");
    if (++it->second > 1) throw ShapeMismatch("parameter " + ref.name() + " assigned twice");
    spec.family(ref.family)[ref.index - 1] = v;
  }
  for (const auto& [ref, count] : seen)
    if (count == 0) throw ShapeMismatch("parameter " + ref.name() + " missing");
  return spec;
}

}  // namespace spintomo
