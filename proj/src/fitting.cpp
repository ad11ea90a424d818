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

#include "spintomo/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace spintomo {

double CosineSumModel::evaluate(double t) const {
  double s = dc.value_or(0.0);
  for (const auto& term : terms) s += term.amplitude * std::cos(term.omega * t);
  return s;
}

double CosineSumModel::amplitude_sum() const {
  double s = dc.value_or(0.0);
  for (const auto& term : terms) s += term.amplitude;
  return s;
}

void CosineSumModel::canonicalize() {
  std::sort(terms.begin(), terms.end(),
            [](const CosineTerm& a, const CosineTerm& b) { return a.omega < b.omega; });
}

TermLayout term_layout(std::size_t links) {
  const std::size_t nodes = links + 1;
  return {nodes / 2, nodes % 2 == 1};
}

namespace {

// Uniform step of the trace; throws unless the grid is uniform.
double uniform_step(const SignalTrace& trace) {
  check_trace(trace);
  if (trace.size() < 2) throw ResolutionError("trace needs at least two samples");
  const double h = (trace.times.back() - trace.times.front()) /
                   static_cast<double>(trace.size() - 1);
  for (std::size_t k = 1; k < trace.size(); ++k)
    if (std::abs(trace.times[k] - trace.times[k - 1] - h) > 1e-8 * h)
      throw SpecError("trace sampling is not uniform at sample " + std::to_string(k));
  return h;
}

void check_sample_count(const SignalTrace& trace, std::size_t n_terms, bool dc) {
  if (n_terms == 0 && !dc) throw SpecError("model needs at least one term");
  if (trace.size() < 4 * std::max<std::size_t>(n_terms, 1))
    throw ResolutionError("need at least " + std::to_string(4 * n_terms) +
                          " samples for " + std::to_string(n_terms) + " terms, have " +
                          std::to_string(trace.size()));
}

}  // namespace

double residual_rms(const SignalTrace& trace, const CosineSumModel& model) {
  double ss = 0.0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double r = model.evaluate(trace.times[k]) - trace.values[k];
    ss += r * r;
  }
  return trace.size() ? std::sqrt(ss / static_cast<double>(trace.size())) : 0.0;
}

CosineSumModel fit_amplitudes(const SignalTrace& trace, std::vector<double> omegas,
                              bool include_dc) {
  const auto rows = static_cast<Eigen::Index>(trace.size());
  const auto cols = static_cast<Eigen::Index>(omegas.size() + (include_dc ? 1 : 0));
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double t = trace.times[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < omegas.size(); ++i)
      a(k, static_cast<Eigen::Index>(i)) = std::cos(omegas[i] * t);
    if (include_dc) a(k, cols - 1) = 1.0;
    y[k] = trace.values[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(y);
  CosineSumModel model;
  for (std::size_t i = 0; i < omegas.size(); ++i)
    model.terms.push_back({x[static_cast<Eigen::Index>(i)], omegas[i]});
  if (include_dc) model.dc = x[cols - 1];
  model.canonicalize();
  model.residual_rms = residual_rms(trace, model);
  return model;
}

CosineSumModel estimate_spectrum(const SignalTrace& trace, std::size_t n_terms,
                                 const SpectrumOptions& options) {
  const double h = uniform_step(trace);
  check_sample_count(trace, n_terms, options.include_dc);
  const std::size_t n = trace.size();
  const double span = static_cast<double>(n) * h;
  const double rayleigh = 2.0 * M_PI / span;
  const double dw = rayleigh / static_cast<double>(std::max<std::size_t>(options.zero_pad, 1));
  const auto grid = static_cast<std::size_t>(std::floor(M_PI / h / dw));

  double mean = 0.0;
  if (options.include_dc) {
    for (double v : trace.values) mean += v;
    mean /= static_cast<double>(n);
  }
  std::vector<double> weighted(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(k) /
                                          static_cast<double>(n - 1));
    weighted[k] = w * (trace.values[k] - mean);
  }

  std::vector<double> power(grid + 1);
  for (std::size_t g = 0; g <= grid; ++g) {
    const double omega = static_cast<double>(g) * dw;
    // Phasor recurrence over the uniform grid.
    const std::complex<double> step = std::polar(1.0, -omega * h);
    std::complex<double> phase = std::polar(1.0, -omega * trace.times.front());
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += weighted[k] * phase;
      phase *= step;
    }
    power[g] = std::norm(acc);
  }

  struct Peak {
    double omega;
    double power;
  };
  std::vector<Peak> peaks;
  auto interpolate = [&](std::size_t g) {
    if (g == 0 || g == grid) return static_cast<double>(g) * dw;
    const double tiny = std::numeric_limits<double>::min();
    const double l0 = std::log(power[g - 1] + tiny);
    const double l1 = std::log(power[g] + tiny);
    const double l2 = std::log(power[g + 1] + tiny);
    const double denom = l0 - 2.0 * l1 + l2;
    const double off = denom < 0.0 ? 0.5 * (l0 - l2) / denom : 0.0;
    return (static_cast<double>(g) + std::clamp(off, -0.5, 0.5)) * dw;
  };
  for (std::size_t g = 0; g <= grid; ++g) {
    const bool left = g == 0 ? !options.include_dc : power[g] > power[g - 1];
    const bool right = g == grid || power[g] >= power[g + 1];
    if (left && right && power[g] > 0.0) peaks.push_back({interpolate(g), power[g]});
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.power > b.power; });

  std::vector<double> chosen;
  const double floor = peaks.empty() ? 0.0 : options.peak_floor * peaks.front().power;
  for (const auto& p : peaks) {
    if (chosen.size() == n_terms || p.power < floor) break;
    if (options.include_dc && p.omega < 0.5 * rayleigh) continue;
    const bool separated = std::all_of(chosen.begin(), chosen.end(), [&](double w) {
      return std::abs(w - p.omega) >= rayleigh;
    });
    if (separated) chosen.push_back(p.omega);
  }
  if (chosen.size() < n_terms)
    throw ResolutionError("found " + std::to_string(chosen.size()) +
                          " separated spectral peaks, need " + std::to_string(n_terms) +
                          " (Rayleigh resolution " + std::to_string(rayleigh) +
                          "; lengthen the sampling window)");
  return fit_amplitudes(trace, std::move(chosen), options.include_dc);
}

CosineSumModel estimate_spectrum_pencil(const SignalTrace& trace, std::size_t n_terms,
                                        const SpectrumOptions& options) {
  const double h = uniform_step(trace);
  check_sample_count(trace, n_terms, options.include_dc);
  const std::size_t order = 2 * n_terms + (options.include_dc ? 1 : 0);
  const std::size_t n = trace.size();
  const std::size_t cols = n / 2 + 1;
  const std::size_t rows = n - cols + 1;
  if (rows < order + 1 || cols < order)
    throw ResolutionError("trace too short for a matrix pencil of order " +
                          std::to_string(order));

  Eigen::MatrixXd hankel(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      hankel(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = trace.values[r + c];
  Eigen::BDCSVD<Eigen::MatrixXd> svd(hankel, Eigen::ComputeThinU);
  const auto m = static_cast<Eigen::Index>(order);
  const Eigen::MatrixXd us = svd.matrixU().leftCols(m);
  const auto r1 = static_cast<Eigen::Index>(rows - 1);
  const Eigen::MatrixXd shift =
      us.topRows(r1).colPivHouseholderQr().solve(us.bottomRows(r1));
  Eigen::EigenSolver<Eigen::MatrixXd> eig(shift, false);
  if (eig.info() != Eigen::Success) throw EigenError("matrix pencil eigensolver failed");

  std::vector<double> args;
  for (Eigen::Index k = 0; k < m; ++k) args.push_back(std::abs(std::arg(eig.eigenvalues()[k])) / h);
  std::sort(args.begin(), args.end());
  if (options.include_dc) args.erase(args.begin());

  const double rayleigh = 2.0 * M_PI / (static_cast<double>(n) * h);
  std::vector<double> omegas;
  for (std::size_t i = 0; i + 1 < args.size(); i += 2) {
    if (args[i + 1] - args[i] > rayleigh)
      throw ResolutionError("matrix pencil roots do not pair into real cosines");
    omegas.push_back(0.5 * (args[i] + args[i + 1]));
  }
  return fit_amplitudes(trace, std::move(omegas), options.include_dc);
}

CosineSumModel refine_fit(const SignalTrace& trace, const CosineSumModel& init,
                          const RefineOptions& options) {
  check_trace(trace);
  const std::size_t nt = init.terms.size();
  const bool dc = init.dc.has_value();
  check_sample_count(trace, nt, dc);
  const auto np = static_cast<Eigen::Index>(2 * nt + (dc ? 1 : 0));
  const auto ns = static_cast<Eigen::Index>(trace.size());

  Eigen::VectorXd p(np);
  for (std::size_t i = 0; i < nt; ++i) {
    p[static_cast<Eigen::Index>(i)] = init.terms[i].amplitude;
    p[static_cast<Eigen::Index>(nt + i)] = init.terms[i].omega;
  }
  if (dc) p[np - 1] = *init.dc;

  auto to_model = [&](const Eigen::VectorXd& q) {
    CosineSumModel m;
    for (std::size_t i = 0; i < nt; ++i)
      m.terms.push_back({q[static_cast<Eigen::Index>(i)], q[static_cast<Eigen::Index>(nt + i)]});
    if (dc) m.dc = q[np - 1];
    return m;
  };
  auto residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r) {
    const CosineSumModel m = to_model(q);
    for (Eigen::Index k = 0; k < ns; ++k)
      r[k] = m.evaluate(trace.times[static_cast<std::size_t>(k)]) -
             trace.values[static_cast<std::size_t>(k)];
    return r.squaredNorm();
  };

  Eigen::VectorXd r(ns), r_try(ns);
  Eigen::MatrixXd jac(ns, np);
  double cost = residuals(p, r);
  double lambda = 1e-3;
  bool converged = false;
  std::size_t iter = 0;
  for (; iter < options.max_iterations && !converged; ++iter) {
    for (Eigen::Index k = 0; k < ns; ++k) {
      const double t = trace.times[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < nt; ++i) {
        const auto ia = static_cast<Eigen::Index>(i);
        const auto iw = static_cast<Eigen::Index>(nt + i);
        jac(k, ia) = std::cos(p[iw] * t);
        jac(k, iw) = -p[ia] * t * std::sin(p[iw] * t);
      }
      if (dc) jac(k, np - 1) = 1.0;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (cost == 0.0 || grad.lpNorm<Eigen::Infinity>() == 0.0) {
      converged = true;
      break;
    }
    // Inner loop: raise damping until the step reduces the cost.
    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd a = jtj;
      for (Eigen::Index d = 0; d < np; ++d) a(d, d) += lambda * std::max(jtj(d, d), 1e-300);
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      if (!step.allFinite()) {
        lambda *= 10.0;
      } else {
        const Eigen::VectorXd trial = p + step;
        const double trial_cost = residuals(trial, r_try);
        if (trial_cost < cost) {
          const double decrease = (cost - trial_cost) / cost;
          const bool tiny_step = step.norm() <= 1e-15 * (p.norm() + 1e-15);
          p = trial;
          r = r_try;
          cost = trial_cost;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          if (decrease < options.relative_decrease || tiny_step) converged = true;
        } else {
          lambda *= 4.0;
        }
      }
      // No descent direction left at working precision: stationary point.
      if (!accepted && lambda > 1e20) {
        converged = true;
        break;
      }
    }
  }

  CosineSumModel out = to_model(p);
  for (auto& term : out.terms) term.omega = std::abs(term.omega);
  out.canonicalize();
  out.iterations = iter;
  out.residual_rms = std::sqrt(cost / static_cast<double>(ns));
  if (!converged)
    throw ConvergenceError("cosine-sum fit did not converge in " +
                               std::to_string(options.max_iterations) + " iterations",
                           out);
  for (std::size_t i = 1; i < out.terms.size(); ++i)
    if (out.terms[i].omega - out.terms[i - 1].omega <= options.min_separation)
      throw ResolutionError("fitted frequencies merged at omega=" +
                            std::to_string(out.terms[i].omega));
  return out;
}

}  // namespace spintomo
