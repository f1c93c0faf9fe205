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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "detailprior/plane.hpp"

namespace detailprior {

/// Knobs of the log-domain detail extraction. Defaults are the recommended
/// settings.
struct SolverParams {
  double alpha = 4.0;    // gradient amplification, >= 0
  double lambda = 1.0;   // fidelity weight, > 0
  double gamma = 0.75;   // sensitivity exponent, (0, 2]
  double epsilon = 2.0;  // noise floor, > 0
  int iterations = 4;    // alternating passes T, >= 1

  /// Throws InvalidArgument naming the first offending field.
  void validate() const;

  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

/// Amplified log2 ratios of neighbouring luminance samples.
/// horizontal is (W-1) x H, vertical is W x (H-1).
struct VectorField {
  Plane horizontal;
  Plane vertical;

  std::size_t width() const noexcept { return horizontal.width() + 1; }
  std::size_t height() const noexcept { return vertical.height() + 1; }
};

/// Per-edge weights 1 / psi^2 of the vector field, same shapes as the field.
struct FidelityWeights {
  Plane horizontal;
  Plane vertical;
};

/// Minimiser of the detail objective, still in log2 domain.
struct LogDetailPlane {
  Plane values;
};

VectorField build_vector_field(const Plane& luminance, double alpha);

/// sqrt(|z|^gamma + epsilon)
double psi(double z, double gamma, double epsilon);

FidelityWeights fidelity_weights(const VectorField& field, double gamma, double epsilon);

/// Per-iteration fidelity weights, geometrically decaying by 4 and summing
/// to lambda / 2.
std::vector<double> lambda_schedule(double lambda, int iterations);

/// Largest plane (in pixels) accepted by solve_dense.
inline constexpr std::size_t kDenseSolveMaxPixels = 4096;

/// Exact minimiser via the full N x N normal equations
///   (E + lambda (Dh' Ah Dh + Dv' Av Dv)) x = lambda (Dh' Ah vh + Dv' Av vv)
/// solved with a dense Cholesky factorisation. O(N^3); reference use only.
LogDetailPlane solve_dense(const VectorField& field, const FidelityWeights& weights,
                           double lambda);

/// Exact minimiser of
///   sum_i (x_i - prev_i)^2 + lambda_t sum_i w_i (v_i - (x_{i+1} - x_i))^2
/// by the Thomas algorithm. prev has N >= 2 entries, v and w have N - 1,
/// every w_i > 0 and lambda_t >= 0.
std::vector<double> solve_line(std::span<const double> prev, std::span<const double> v,
                               std::span<const double> w, double lambda_t);

/// Separable approximation of solve_dense: for each scheduled lambda_t, one
/// horizontal pass of solve_line over every row, then one vertical pass over
/// every column, each warm-started from the running estimate. O(T * H * W).
///
/// Output does not depend on `threads`.
LogDetailPlane solve_fast(const VectorField& field, const FidelityWeights& weights,
                          const SolverParams& params, std::size_t threads = 1);

/// sum x^2 + lambda * (sum ah (vh - dx)^2 + sum av (vv - dy)^2),
/// forward differences.
double objective_value(const LogDetailPlane& solution, const VectorField& field,
                       const FidelityWeights& weights, double lambda);

/// ||Mx - b|| / max(||b||, 1e-30) for the full normal equations, evaluated
/// matrix-free with stencils.
double normal_equation_residual(const LogDetailPlane& solution, const VectorField& field,
                                const FidelityWeights& weights, double lambda);

}  // namespace detailprior
