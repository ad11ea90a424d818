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

#ifndef SPINTOMO_COSINE_SUM_HPP
#define SPINTOMO_COSINE_SUM_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace spintomo {

struct CosineTerm {
  double amplitude = 0.0;
  double omega = 0.0;
};

// Trial function sum_i A_i cos(omega_i t) (+ dc).
struct CosineSumModel {
  std::vector<CosineTerm> terms;
  std::optional<double> dc;
  double residual_rms = 0.0;
  std::size_t iterations = 0;

  double evaluate(double t) const;
  // Value at t = 0.
  double amplitude_sum() const;
  // Terms sorted by ascending frequency.
  void canonicalize();
};

}  // namespace spintomo

#endif  // SPINTOMO_COSINE_SUM_HPP
