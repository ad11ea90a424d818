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

#include "spintomo/dynamics.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "spintomo/errors.hpp"
#include "spintomo/series.hpp"

namespace spintomo {

void check_trace(const SignalTrace& trace) {
  if (trace.times.size() != trace.values.size())
    throw SpecError("trace has " + std::to_string(trace.times.size()) + " times but " +
                    std::to_string(trace.values.size()) + " values");
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    if (!std::isfinite(trace.times[k]) || !std::isfinite(trace.values[k]))
      throw SpecError("trace sample " + std::to_string(k) + " is not finite");
    if (k > 0 && !(trace.times[k] > trace.times[k - 1]))
      throw SpecError("trace times must be strictly increasing (sample " +
                      std::to_string(k) + ")");
  }
  check_probe(trace.probe);
}

std::vector<double> sample_times(double step, double window) {
  if (!(step > 0.0) || !std::isfinite(step)) throw SpecError("sample step must be positive");
  if (!(window > 0.0) || !std::isfinite(window)) throw SpecError("window must be positive");
  const auto count = static_cast<std::size_t>(std::floor(window / step + 1e-9));
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = static_cast<double>(k) * step;
  return t;
}

ChainSpectrum chain_spectrum(const FluxChain& chain) {
  check_chain(chain);
  const auto n = static_cast<Eigen::Index>(chain.size() + 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = chain.links[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw EigenError("tridiagonal eigensolver did not converge");
  ChainSpectrum out;
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues.push_back(solver.eigenvalues()[k]);
    const double v = solver.eigenvectors()(0, k);
    out.weights.push_back(v * v);
  }
  return out;
}

SignalTrace spectral_signal(const FluxChain& chain, std::span<const double> times,
                            const Probe& probe) {
  check_probe(probe);
  const auto spec = chain_spectrum(chain);
  SignalTrace out{{times.begin(), times.end()}, {}, probe};
  out.values.reserve(times.size());
  for (double t : times) {
    // 1 - 2 sum w sin^2(lambda t): exact at t = 0 since the weights sum to one.
    double s = 0.0;
    for (std::size_t k = 0; k < spec.weights.size(); ++k) {
      const double h = std::sin(spec.eigenvalues[k] * t);
      s += spec.weights[k] * h * h;
    }
    out.values.push_back(probe.sign * (1.0 - 2.0 * s));
  }
  return out;
}

SignalTrace taylor_signal(const FluxChain& chain, std::span<const double> times,
                          std::size_t order, const Probe& probe) {
  check_chain(chain);
  check_probe(probe);
  const auto delta = boundary_delta(chain.links, order);
  SignalTrace out{{times.begin(), times.end()}, {}, probe};
  for (double t : times) {
    long double term = 1.0L;  // (2t)^l / l!
    long double sum = delta[0];
    for (std::size_t l = 1; l <= order; ++l) {
      term *= 2.0L * static_cast<long double>(t) / static_cast<long double>(l);
      const long double x = term * delta[l];
      if (!std::isfinite(term) || !std::isfinite(x))
        throw OverflowError("Taylor term of order " + std::to_string(l) + " at t=" +
                            std::to_string(t) + " is not representable");
      sum += x;
    }
    out.values.push_back(probe.sign * static_cast<double>(sum));
  }
  return out;
}

BulkState BulkState::all_zero(std::size_t n_spins) {
  BulkState b;
  b.kind = Kind::Explicit;
  const std::size_t dim = std::size_t{1} << (n_spins - 1);
  b.amplitudes_re.assign(dim, 0.0);
  b.amplitudes_im.assign(dim, 0.0);
  b.amplitudes_re[0] = 1.0;
  return b;
}

namespace {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

// Basis index bit (i-1) holds spin i; bit value 0 is |0>, the +1 eigenstate of Z.
inline double zsign(std::size_t state, std::size_t bit) {
  return ((state >> bit) & 1u) ? -1.0 : 1.0;
}

Eigen::MatrixXd build_hamiltonian(const ChainSpec& spec) {
  const std::size_t n = spec.n_spins;
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  };
  for (std::size_t s = 0; s < dim; ++s) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t flip = s ^ (std::size_t{3} << i);
      const double zz = zsign(s, i) * zsign(s, i + 1);
      switch (spec.model) {
        case Model::XX:
          at(flip, s) += spec.j[i] * (1.0 - zz);
          break;
        case Model::XY:
          at(flip, s) += spec.jx[i] - spec.jy[i] * zz;
          break;
        case Model::IsingTransverse:
          at(s, s) += spec.jz[i] * zz;
          break;
      }
    }
    if (spec.model == Model::IsingTransverse)
      for (std::size_t i = 0; i < n; ++i) at(s ^ (std::size_t{1} << i), s) += spec.b[i];
  }
  return h;
}

CVec spin1_state(Preparation p) {
  const double r = 1.0 / std::sqrt(2.0);
  CVec v(2);
  switch (p) {
    case Preparation::PlusX: v << r, r; break;
    case Preparation::MinusX: v << r, -r; break;
    case Preparation::PlusY: v << cplx(r, 0), cplx(0, r); break;
    case Preparation::MinusY: v << cplx(r, 0), cplx(0, -r); break;
    case Preparation::Zero: v << 1, 0; break;
    case Preparation::One: v << 0, 1; break;
  }
  return v;
}

CVec random_bulk(bool product, std::size_t bulk_spins, std::mt19937_64& rng) {
  const std::size_t dim = std::size_t{1} << bulk_spins;
  CVec v(static_cast<Eigen::Index>(dim));
  if (product) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    v.setZero();
    v[0] = 1.0;
    std::size_t filled = 1;
    for (std::size_t k = 0; k < bulk_spins; ++k) {
      const double cos_theta = 2.0 * u(rng) - 1.0;
      const double phi = 2.0 * M_PI * u(rng);
      const cplx a0 = std::sqrt(0.5 * (1.0 + cos_theta));
      const cplx a1 = std::polar(std::sqrt(0.5 * (1.0 - cos_theta)), phi);
      // Spin k+2 sits on bulk bit k.
      for (std::size_t s = 0; s < filled; ++s) {
        v[static_cast<Eigen::Index>(s + filled)] = v[static_cast<Eigen::Index>(s)] * a1;
        v[static_cast<Eigen::Index>(s)] *= a0;
      }
      filled *= 2;
    }
  } else {
    std::normal_distribution<double> g(0.0, 1.0);
    for (Eigen::Index s = 0; s < v.size(); ++s) v[s] = cplx(g(rng), g(rng));
    v.normalize();
  }
  return v;
}

double expectation(const CVec& psi, Observable o) {
  double acc = 0.0;
  const auto dim = static_cast<std::size_t>(psi.size());
  for (std::size_t s = 0; s < dim; ++s) {
    const cplx a = std::conj(psi[static_cast<Eigen::Index>(s)]);
    const cplx partner = psi[static_cast<Eigen::Index>(s ^ 1u)];
    switch (o) {
      case Observable::X1: acc += (a * partner).real(); break;
      case Observable::Y1:
        // Y|b> = i (-1)^b |1-b>
        acc += (a * cplx(0.0, zsign(s ^ 1u, 0)) * partner).real();
        break;
      case Observable::Z1: acc += zsign(s, 0) * std::norm(psi[static_cast<Eigen::Index>(s)]); break;
    }
  }
  return acc;
}

}  // namespace

SignalTrace statevector_signal(const ChainSpec& spec, const Probe& probe,
                               const BulkState& bulk, std::span<const double> times,
                               const StatevectorOptions& options) {
  validate_spec(spec);
  check_probe(probe);
  if (spec.n_spins > options.max_spins)
    throw CapExceeded("state-vector simulation capped at " +
                      std::to_string(options.max_spins) + " spins, spec has " +
                      std::to_string(spec.n_spins));
  const std::size_t n = spec.n_spins;
  const std::size_t bulk_dim = std::size_t{1} << (n - 1);

  std::vector<CVec> bulks;
  std::mt19937_64 rng(bulk.seed);
  switch (bulk.kind) {
    case BulkState::Kind::Product: bulks.push_back(random_bulk(true, n - 1, rng)); break;
    case BulkState::Kind::RandomPure: bulks.push_back(random_bulk(false, n - 1, rng)); break;
    case BulkState::Kind::MaximallyMixed:
      if (bulk.samples == 0) throw SpecError("mixed bulk needs at least one sample");
      for (std::size_t k = 0; k < bulk.samples; ++k) bulks.push_back(random_bulk(false, n - 1, rng));
      break;
    case BulkState::Kind::Explicit: {
      if (bulk.amplitudes_re.size() != bulk_dim ||
          (!bulk.amplitudes_im.empty() && bulk.amplitudes_im.size() != bulk_dim))
        throw SpecError("explicit bulk state must have dimension " + std::to_string(bulk_dim));
      CVec v(static_cast<Eigen::Index>(bulk_dim));
      for (std::size_t s = 0; s < bulk_dim; ++s)
        v[static_cast<Eigen::Index>(s)] =
            cplx(bulk.amplitudes_re[s], bulk.amplitudes_im.empty() ? 0.0 : bulk.amplitudes_im[s]);
      if (std::abs(v.norm() - 1.0) > options.norm_tolerance)
        throw NormalizationError("explicit bulk state is not normalized");
      bulks.push_back(v);
      break;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_hamiltonian(spec));
  if (solver.info() != Eigen::Success)
    throw EigenError("Hamiltonian eigensolver did not converge");
  const Eigen::VectorXd& energies = solver.eigenvalues();
  const Eigen::MatrixXcd vecs = solver.eigenvectors().cast<cplx>();

  const CVec s1 = spin1_state(probe.preparation);
  SignalTrace out{{times.begin(), times.end()}, std::vector<double>(times.size(), 0.0), probe};
  for (const CVec& b : bulks) {
    // Spin 1 is the lowest bit: index = 2*bulk_index + spin1_bit.
    CVec psi0(static_cast<Eigen::Index>(2 * bulk_dim));
    for (std::size_t s = 0; s < bulk_dim; ++s) {
      psi0[static_cast<Eigen::Index>(2 * s)] = s1[0] * b[static_cast<Eigen::Index>(s)];
      psi0[static_cast<Eigen::Index>(2 * s + 1)] = s1[1] * b[static_cast<Eigen::Index>(s)];
    }
    const CVec phi = vecs.adjoint() * psi0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      CVec rotated(phi.size());
      for (Eigen::Index a = 0; a < phi.size(); ++a)
        rotated[a] = std::polar(1.0, -energies[a] * times[k]) * phi[a];
      const CVec psi = vecs * rotated;
      if (std::abs(psi.squaredNorm() - 1.0) > options.norm_tolerance)
        throw NormalizationError("state norm drifted at t=" + std::to_string(times[k]));
      out.values[k] += expectation(psi, probe.observable);
    }
  }
  for (double& v : out.values) v /= static_cast<double>(bulks.size());
  return out;
}

SignalTrace add_noise(const SignalTrace& trace, const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma))
    throw SpecError("noise sigma must be finite and non-negative");
  SignalTrace out = trace;
  if (noise.sigma == 0.0) return out;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> g(0.0, noise.sigma);
  for (double& v : out.values) v += g(rng);
  return out;
}

}  // namespace spintomo
