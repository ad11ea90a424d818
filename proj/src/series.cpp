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

#include "spintomo/series.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spintomo/errors.hpp"

namespace spintomo {

namespace {

using real = long double;

// delta_j^(l) recurrence with c_0 = c_{m+1} = 0. Fills `table` (row-major
// [order][node], nodes 0-based) when non-null and returns delta_1^(l).
template <typename Link>
std::vector<real> run_recurrence(std::span<const Link> links, std::size_t max_order,
                                 std::vector<real>* table) {
  const std::size_t nodes = links.size() + 1;
  std::vector<real> cur(nodes, 0.0L), next(nodes, 0.0L);
  cur[0] = 1.0L;
  std::vector<real> boundary{1.0L};
  boundary.reserve(max_order + 1);
  if (table) table->assign(cur.begin(), cur.end());
  for (std::size_t l = 1; l <= max_order; ++l) {
    // Order l reaches at most node l+1.
    const std::size_t reach = std::min(nodes, l + 1);
    for (std::size_t j = 0; j < nodes; ++j) {
      if (j >= reach) {
        next[j] = 0.0L;
        continue;
      }
      real s = 0.0L;
      if (j > 0) s += static_cast<real>(links[j - 1]) * cur[j - 1];
      if (j + 1 < nodes) s += static_cast<real>(links[j]) * cur[j + 1];
      // Node j+1 in 1-based labels: sign (-1)^{j+1}.
      next[j] = (j % 2 == 0) ? -s : s;
    }
    std::swap(cur, next);
    boundary.push_back(cur[0]);
    if (table) table->insert(table->end(), cur.begin(), cur.end());
  }
  return boundary;
}

// 4^j / (2j)! for j = 1..count.
std::vector<real> even_scales(std::size_t count) {
  std::vector<real> out;
  real s = 1.0L;
  for (std::size_t j = 1; j <= count; ++j) {
    s *= 4.0L / static_cast<real>((2 * j - 1) * (2 * j));
    out.push_back(s);
  }
  return out;
}

template <typename Link>
real boundary_even(std::span<const Link> links, std::size_t j) {
  return run_recurrence(links, 2 * j, nullptr)[2 * j];
}

}  // namespace

DeltaTable::DeltaTable(FluxChain chain, std::size_t max_order,
                       std::vector<long double> data)
    : chain_(std::move(chain)), max_order_(max_order), data_(std::move(data)) {
  if (data_.size() != (max_order_ + 1) * nodes())
    throw std::invalid_argument("DeltaTable: data size does not match shape");
}

long double DeltaTable::exact(std::size_t node, std::size_t order) const {
  if (node == 0 || node > nodes() || order > max_order_)
    throw std::out_of_range("DeltaTable index out of range");
  return data_[order * nodes() + (node - 1)];
}

std::string DeltaTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "j,l,value\n";
  for (std::size_t j = 1; j <= nodes(); ++j)
    for (std::size_t l = 0; l <= max_order_; ++l)
      os << j << ',' << l << ',' << (*this)(j, l) << '\n';
  return os.str();
}

DeltaTable delta_coefficients(const FluxChain& chain, std::size_t max_order) {
  check_chain(chain);
  std::vector<real> table;
  run_recurrence(std::span<const double>(chain.links), max_order, &table);
  return DeltaTable(chain, max_order, std::move(table));
}

std::vector<long double> boundary_delta(std::span<const double> links,
                                        std::size_t max_order) {
  return run_recurrence(links, max_order, nullptr);
}

std::vector<double> mu_for_links(std::span<const double> links, std::size_t count) {
  const auto boundary = run_recurrence(links, 2 * count, nullptr);
  for (std::size_t l = 1; l < boundary.size(); l += 2)
    if (boundary[l] != 0.0L)
      throw std::logic_error("odd-order boundary coefficient is nonzero");
  const auto scale = even_scales(count);
  std::vector<double> mu(count);
  for (std::size_t j = 1; j <= count; ++j)
    mu[j - 1] = static_cast<double>(scale[j - 1] * boundary[2 * j]);
  return mu;
}

std::vector<double> mu_coefficients(const FluxChain& chain, std::size_t count) {
  check_chain(chain);
  if (chain.size() < count)
    throw InsufficientChain("mu_" + std::to_string(count) + " needs at least " +
                            std::to_string(count) + " links, chain has " +
                            std::to_string(chain.size()));
  return mu_for_links(chain.links, count);
}

std::vector<double> eta_coefficients(const CosineSumModel& fit, std::size_t count) {
  std::vector<real> acc(count, 0.0L);
  for (const auto& term : fit.terms) {
    const real w2 = static_cast<real>(term.omega) * static_cast<real>(term.omega);
    real p = static_cast<real>(term.amplitude);
    real inv_fact = 1.0L;
    for (std::size_t j = 1; j <= count; ++j) {
      p *= w2;
      inv_fact /= static_cast<real>((2 * j - 1) * (2 * j));
      acc[j - 1] += p * inv_fact;
    }
  }
  std::vector<double> eta(count);
  for (std::size_t j = 1; j <= count; ++j)
    eta[j - 1] = static_cast<double>((j % 2 == 1) ? -acc[j - 1] : acc[j - 1]);
  return eta;
}

Inversion invert_couplings(std::span<const double> eta, const InversionOptions& options) {
  const auto scale = even_scales(eta.size());
  Inversion out;
  std::vector<real> prefix;
  for (std::size_t j = 1; j <= eta.size(); ++j) {
    // Work with delta_1^(2j) = mu_j (2j)!/4^j; there the slope in c_j^2 is
    // (-1)^j prod_{k<j} c_k^2.
    const real target = static_cast<real>(eta[j - 1]) / scale[j - 1];
    prefix.push_back(0.0L);
    const std::span<const real> links(prefix);
    const real p0 = boundary_even(links, j);
    prefix.back() = 1.0L;
    const real p1 = boundary_even(links, j);
    prefix.back() = 2.0L;
    const real p2 = boundary_even(links, j);
    // Light cone: a further link must not reach delta_1^(2j).
    prefix.back() = 1.0L;
    prefix.push_back(3.0L);
    const real p1_ext = boundary_even(std::span<const real>(prefix), j);
    prefix.pop_back();

    const real slope = p1 - p0;
    if (p1_ext != p1) throw std::logic_error("light-cone violation in inversion");
    if (std::abs((p2 - p0) - 4.0L * slope) > 1e-9L * (std::abs(p2) + std::abs(p0) + std::abs(slope)))
      throw std::logic_error("Taylor coefficient is not affine in the squared link");
    if (std::abs(slope) < static_cast<real>(options.degenerate_slope))
      throw DegenerateError(j, static_cast<double>(slope));

    real radicand = (target - p0) / slope;
    out.radicands.push_back(static_cast<double>(radicand));
    if (radicand < 0.0L) {
      if (radicand < -static_cast<real>(options.radicand_tolerance))
        throw InversionError(j, static_cast<double>(radicand));
      out.clamped.push_back(j);
      radicand = 0.0L;
    }
    const real c = std::sqrt(radicand);
    prefix.back() = c;
    out.links.push_back(static_cast<double>(c));
  }
  return out;
}

}  // namespace spintomo
