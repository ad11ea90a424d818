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

// Test-only reference implementations, kept independent of the library's
// recurrence and fitting code paths.

#ifndef SPINTOMO_TESTS_ORACLES_HPP
#define SPINTOMO_TESTS_ORACLES_HPP

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spintomo/chain_model.hpp"

namespace oracle {

inline const std::vector<double> kReferenceCouplings = {1.40, 1.48, 1.06, 0.80, 1.36, 0.97, 0.66};

inline spintomo::FluxChain chain_of(const std::vector<double>& links) {
  spintomo::FluxChain c;
  c.links = links;
  for (std::size_t i = 0; i < links.size(); ++i) c.labels.push_back({spintomo::Family::J, i + 1});
  return c;
}

inline spintomo::ChainSpec xx_spec(const std::vector<double>& j) {
  spintomo::ChainSpec s;
  s.model = spintomo::Model::XX;
  s.n_spins = j.size() + 1;
  s.j = j;
  return s;
}

// Full dense eigendecomposition of the (m+1)-node tridiagonal, via the
// general self-adjoint solver rather than the tridiagonal entry point.
struct DenseSpectrum {
  Eigen::VectorXd lambda;
  Eigen::VectorXd weight;
};

inline DenseSpectrum dense_spectrum(const std::vector<double>& links) {
  const auto n = static_cast<Eigen::Index>(links.size() + 1);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i) = links[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  DenseSpectrum d{es.eigenvalues(), es.eigenvectors().row(0).transpose().cwiseAbs2()};
  return d;
}

// mu_j as spectral moments: (-1)^j 4^j / (2j)! sum_k w_k lambda_k^{2j}.
inline std::vector<double> spectral_mu(const std::vector<double>& links, std::size_t count) {
  const auto d = dense_spectrum(links);
  std::vector<double> mu;
  double fact = 1.0;
  for (std::size_t j = 1; j <= count; ++j) {
    fact *= static_cast<double>((2 * j - 1) * (2 * j));
    double s = 0.0;
    for (Eigen::Index k = 0; k < d.lambda.size(); ++k)
      s += d.weight[k] * std::pow(d.lambda[k], 2.0 * static_cast<double>(j));
    mu.push_back(((j % 2) ? -1.0 : 1.0) * std::pow(4.0, static_cast<double>(j)) * s / fact);
  }
  return mu;
}

// Printed closed forms of the first four Taylor coefficients.
inline double closed_mu1(const std::vector<double>& c) { return -2.0 * c[0] * c[0]; }
inline double closed_mu2(const std::vector<double>& c) {
  const double a = c[0] * c[0], b = c[1] * c[1];
  return 2.0 / 3.0 * (a * a + a * b);
}
inline double closed_mu3(const std::vector<double>& c) {
  const double a = c[0] * c[0], b = c[1] * c[1], d = c[2] * c[2];
  return -4.0 / 45.0 * a * ((a + b) * (a + b) + b * d);
}
inline double closed_mu4(const std::vector<double>& c) {
  const double j1 = c[0] * c[0], j2 = c[1] * c[1], j3 = c[2] * c[2], j4 = c[3] * c[3];
  return 2.0 / 315.0 * j1 *
         (j1 * j1 * j1 + 3.0 * j1 * j1 * j2 + j1 * (3.0 * j2 * j2 + 2.0 * j2 * j3) +
          j2 * ((j2 + j3) * (j2 + j3) + j3 * j4));
}

inline std::vector<double> random_links(std::mt19937_64& rng, std::size_t m, double lo = 0.5,
                                        double hi = 1.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> c(m);
  for (double& x : c) x = u(rng);
  return c;
}

}  // namespace oracle

#endif  // SPINTOMO_TESTS_ORACLES_HPP
