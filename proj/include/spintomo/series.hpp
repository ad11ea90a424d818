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

#ifndef SPINTOMO_SERIES_HPP
#define SPINTOMO_SERIES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spintomo/chain_model.hpp"
#include "spintomo/cosine_sum.hpp"

namespace spintomo {

// Information-flux coefficients delta_j^(l) of a flux chain: the weight of the
// evolving spin-1 operator on node j at Taylor order l. Stored in extended
// precision.
class DeltaTable {
 public:
  DeltaTable(FluxChain chain, std::size_t max_order, std::vector<long double> data);

  // node is 1-based, 1 <= node <= nodes().
  double operator()(std::size_t node, std::size_t order) const {
    return static_cast<double>(exact(node, order));
  }
  long double exact(std::size_t node, std::size_t order) const;

  std::size_t nodes() const { return chain_.size() + 1; }
  std::size_t max_order() const { return max_order_; }
  const FluxChain& chain() const { return chain_; }

  // Rows "j,l,value" with a header, for debugging.
  std::string to_csv() const;

 private:
  FluxChain chain_;
  std::size_t max_order_;
  std::vector<long double> data_;  // row-major [order][node]
};

DeltaTable delta_coefficients(const FluxChain& chain, std::size_t max_order);

// delta_1^(l) for l = 0..max_order. Links may be zero; no chain validation.
std::vector<long double> boundary_delta(std::span<const double> links,
                                        std::size_t max_order);

// Coefficients of t^{2j}, j = 1..count, in the Taylor series of the boundary
// signal. Throws InsufficientChain if the chain has fewer than count links.
std::vector<double> mu_coefficients(const FluxChain& chain, std::size_t count);

// Same coefficients for an arbitrary link array (zeros allowed, any count).
std::vector<double> mu_for_links(std::span<const double> links, std::size_t count);

// Coefficients of t^{2j}, j = 1..count, in the Taylor series of the fitted
// cosine sum: (-1)^j / (2j)! * sum_i A_i omega_i^{2j}. The amplitude enters
// linearly; a dc term only affects the constant.
std::vector<double> eta_coefficients(const CosineSumModel& fit, std::size_t count);

struct InversionOptions {
  // Squared-coupling estimates in (-tolerance, 0) are clamped to zero.
  double radicand_tolerance = 1e-8;
  // Lower bound on the sensitivity of the j-th equation to c_j^2, measured as
  // the product of the earlier squared links.
  double degenerate_slope = 1e-14;
};

struct Inversion {
  std::vector<double> links;          // magnitudes |c_1| .. |c_m|
  std::vector<std::size_t> clamped;   // 1-based links whose radicand was clamped
  std::vector<double> radicands;      // c_j^2 before the square root
};

// Solves eta_j = mu_j(c_1..c_j), j = 1..m, one link at a time.
Inversion invert_couplings(std::span<const double> eta,
                           const InversionOptions& options = {});

}  // namespace spintomo

#endif  // SPINTOMO_SERIES_HPP
