// Copyright 2026 The detailprior Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "detailprior/detail_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detailprior/error.hpp"
#include "linear_system.hpp"

namespace detailprior {
namespace {

void check_field_shape(const VectorField& field) {
  const std::size_t w = field.width();
  const std::size_t h = field.height();
  if (field.horizontal.height() != h || field.vertical.width() != w) {
    throw DimensionMismatch("vector field planes are inconsistent: horizontal " +
                            std::to_string(field.horizontal.width()) + "x" +
                            std::to_string(field.horizontal.height()) + ", vertical " +
                            std::to_string(field.vertical.width()) + "x" +
                            std::to_string(field.vertical.height()));
  }
}

void check_weights_shape(const VectorField& field, const FidelityWeights& weights) {
  check_field_shape(field);
  if (!weights.horizontal.same_shape(field.horizontal) ||
      !weights.vertical.same_shape(field.vertical)) {
    throw DimensionMismatch("fidelity weights do not match the vector field");
  }
}

void check_solution_shape(const LogDetailPlane& solution, const VectorField& field) {
  if (solution.values.width() != field.width() || solution.values.height() != field.height()) {
    throw DimensionMismatch("detail plane does not match the vector field");
  }
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite and > 0, got " + std::to_string(lambda));
  }
}

// b = lambda * (Dh' Ah vh + Dv' Av vv), as a grid.
Plane normal_rhs(const VectorField& field, const FidelityWeights& weights, double lambda) {
  const std::size_t w = field.width();
  const std::size_t h = field.height();
  Plane b(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x + 1 < w; ++x) {
      const double f = lambda * weights.horizontal.at(x, y) * field.horizontal.at(x, y);
      b.at(x, y) -= f;
      b.at(x + 1, y) += f;
    }
  }
  for (std::size_t y = 0; y + 1 < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double f = lambda * weights.vertical.at(x, y) * field.vertical.at(x, y);
      b.at(x, y) -= f;
      b.at(x, y + 1) += f;
    }
  }
  return b;
}

}  // namespace

void SolverParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("alpha must be finite and >= 0, got " + std::to_string(alpha));
  }
  check_lambda(lambda);
  if (!(gamma > 0.0 && gamma <= 2.0)) {
    throw InvalidArgument("gamma must lie in (0, 2], got " + std::to_string(gamma));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be finite and > 0, got " + std::to_string(epsilon));
  }
  if (iterations < 1) {
    throw InvalidArgument("iterations must be >= 1, got " + std::to_string(iterations));
  }
}

VectorField build_vector_field(const Plane& luminance, double alpha) {
  const std::size_t w = luminance.width();
  const std::size_t h = luminance.height();
  if (w < 2 || h < 2) {
    throw InvalidArgument("vector field needs a plane of at least 2x2, got " + std::to_string(w) +
                          "x" + std::to_string(h));
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("alpha must be finite and >= 0");
  }
  Plane log_y(w, h);
  for (std::size_t i = 0; i < luminance.size(); ++i) {
    const double s = luminance.samples()[i];
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("luminance must be finite and non-negative, got " + std::to_string(s));
    }
    log_y.samples()[i] = std::log2(s + 1.0);
  }

  const double gain = 1.0 + alpha;
  VectorField field{Plane(w - 1, h), Plane(w, h - 1)};
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x + 1 < w; ++x) {
      field.horizontal.at(x, y) = gain * (log_y.at(x + 1, y) - log_y.at(x, y));
    }
  }
  for (std::size_t y = 0; y + 1 < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      field.vertical.at(x, y) = gain * (log_y.at(x, y + 1) - log_y.at(x, y));
    }
  }
  return field;
}

double psi(double z, double gamma, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("psi: epsilon must be > 0");
  return std::sqrt(std::pow(std::abs(z), gamma) + epsilon);
}

FidelityWeights fidelity_weights(const VectorField& field, double gamma, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("fidelity_weights: epsilon must be > 0");
  auto weigh = [&](const Plane& v) {
    Plane out(v.width(), v.height());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.samples()[i] = 1.0 / (std::pow(std::abs(v.samples()[i]), gamma) + epsilon);
    }
    return out;
  };
  return {weigh(field.horizontal), weigh(field.vertical)};
}

std::vector<double> lambda_schedule(double lambda, int iterations) {
  check_lambda(lambda);
  if (iterations < 1) throw InvalidArgument("lambda_schedule: iterations must be >= 1");
  const double denominator = std::ldexp(1.0, 2 * iterations) - 1.0;
  std::vector<double> out(static_cast<std::size_t>(iterations));
  for (int t = 1; t <= iterations; ++t) {
    out[t - 1] = 1.5 * std::ldexp(1.0, 2 * (iterations - t)) / denominator * lambda;
  }
  return out;
}

LogDetailPlane solve_dense(const VectorField& field, const FidelityWeights& weights,
                           double lambda) {
  check_weights_shape(field, weights);
  check_lambda(lambda);
  const std::size_t w = field.width();
  const std::size_t h = field.height();
  if (w * h > kDenseSolveMaxPixels) {
    throw InvalidArgument("dense solve is limited to " + std::to_string(kDenseSolveMaxPixels) +
                          " pixels, got " + std::to_string(w * h));
  }
  const Plane b = normal_rhs(field, weights, lambda);
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(b.samples().data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd x =
      internal::solve_dense_spd(w, h, weights.horizontal, weights.vertical, lambda, rhs);
  return {Plane(w, h, std::vector<double>(x.data(), x.data() + x.size()))};
}

std::vector<double> solve_line(std::span<const double> prev, std::span<const double> v,
                               std::span<const double> w, double lambda_t) {
  const std::size_t n = prev.size();
  if (n < 2) throw InvalidArgument("solve_line needs at least 2 samples");
  if (v.size() != n - 1 || w.size() != n - 1) {
    throw DimensionMismatch("solve_line: v and w need " + std::to_string(n - 1) + " entries");
  }
  for (double wi : w) {
    if (!(wi > 0.0) || !std::isfinite(wi)) {
      throw InvalidArgument("solve_line: weights must be finite and > 0");
    }
  }
  if (!(lambda_t >= 0.0) || !std::isfinite(lambda_t)) {
    throw InvalidArgument("solve_line: lambda_t must be finite and >= 0");
  }
  std::vector<double> x(prev.begin(), prev.end());
  std::vector<double> scratch(n);
  internal::solve_line_inplace(x, v, w, lambda_t, scratch);
  return x;
}

LogDetailPlane solve_fast(const VectorField& field, const FidelityWeights& weights,
                          const SolverParams& params, std::size_t threads) {
  params.validate();
  check_weights_shape(field, weights);
  const auto schedule = lambda_schedule(params.lambda, params.iterations);
  Plane u(field.width(), field.height(), 0.0);
  internal::separable_passes(u, &field.horizontal, weights.horizontal, &field.vertical,
                             weights.vertical, schedule, threads);
  return {std::move(u)};
}

double objective_value(const LogDetailPlane& solution, const VectorField& field,
                       const FidelityWeights& weights, double lambda) {
  check_weights_shape(field, weights);
  check_solution_shape(solution, field);
  const Plane& x = solution.values;
  double sparsity = 0.0;
  for (double s : x.samples()) sparsity += s * s;
  double fidelity = 0.0;
  for (std::size_t y = 0; y < x.height(); ++y) {
    for (std::size_t i = 0; i + 1 < x.width(); ++i) {
      const double r = field.horizontal.at(i, y) - (x.at(i + 1, y) - x.at(i, y));
      fidelity += weights.horizontal.at(i, y) * r * r;
    }
  }
  for (std::size_t y = 0; y + 1 < x.height(); ++y) {
    for (std::size_t i = 0; i < x.width(); ++i) {
      const double r = field.vertical.at(i, y) - (x.at(i, y + 1) - x.at(i, y));
      fidelity += weights.vertical.at(i, y) * r * r;
    }
  }
  return sparsity + lambda * fidelity;
}

double normal_equation_residual(const LogDetailPlane& solution, const VectorField& field,
                                const FidelityWeights& weights, double lambda) {
  check_weights_shape(field, weights);
  check_solution_shape(solution, field);
  const Plane& x = solution.values;
  const Plane b = normal_rhs(field, weights, lambda);
  Plane mx = x;
  for (std::size_t y = 0; y < x.height(); ++y) {
    for (std::size_t i = 0; i + 1 < x.width(); ++i) {
      const double f = lambda * weights.horizontal.at(i, y) * (x.at(i + 1, y) - x.at(i, y));
      mx.at(i, y) -= f;
      mx.at(i + 1, y) += f;
    }
  }
  for (std::size_t y = 0; y + 1 < x.height(); ++y) {
    for (std::size_t i = 0; i < x.width(); ++i) {
      const double f = lambda * weights.vertical.at(i, y) * (x.at(i, y + 1) - x.at(i, y));
      mx.at(i, y) -= f;
      mx.at(i, y + 1) += f;
    }
  }
  double r2 = 0.0;
  double b2 = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double r = mx.samples()[i] - b.samples()[i];
    r2 += r * r;
    b2 += b.samples()[i] * b.samples()[i];
  }
  return std::sqrt(r2) / std::max(std::sqrt(b2), 1e-30);
}

}  // namespace detailprior
