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

// Shared numerical kernels for the weighted-least-squares systems
//   (E + lambda * (Dh' Wh Dh + Dv' Wv Dv)) x = rhs
// on a W x H grid with forward differences. Wh is (W-1) x H, Wv is W x (H-1).

#include <Eigen/Dense>

#include <cstddef>
#include <span>

#include "detailprior/plane.hpp"

namespace detailprior::internal {

/// Assembles the full N x N matrix and solves it with dense Cholesky.
/// Throws InternalError if the factorisation fails or the relative residual
/// exceeds 1e-8.
Eigen::VectorXd solve_dense_spd(std::size_t width, std::size_t height, const Plane& wh,
                                const Plane& wv, double lambda, const Eigen::VectorXd& rhs);

/// One forward-elimination step of the Thomas algorithm for row i of
///   (E + lambda D'WD) x = prev + lambda D'W v.
/// (w_left, v_left) is the edge to i-1, (w_right, v_right) the edge to i+1;
/// missing edges pass zeros. c_prev/d_prev come from row i-1 (zero for i = 0).
/// Shared by every line solver so all paths round identically.
inline void thomas_forward(double prev, double w_left, double v_left, double w_right,
                           double v_right, double lambda, double c_prev, double d_prev,
                           double& c, double& d) {
  const double lower = -lambda * w_left;
  const double upper = -lambda * w_right;
  const double diag = 1.0 + lambda * (w_left + w_right);
  const double rhs = prev + lambda * (w_left * v_left - w_right * v_right);
  const double pivot = diag - lower * c_prev;
  c = upper / pivot;
  d = (rhs - lower * d_prev) / pivot;
}

/// In-place Thomas solve of one contiguous line. `x` holds prev on entry and
/// the solution on exit; `v` may be empty (treated as zero). `scratch` needs
/// x.size() entries.
void solve_line_inplace(std::span<double> x, std::span<const double> v, std::span<const double> w,
                        double lambda, std::span<double> scratch);

/// Warm-started alternating passes: for each lambda_t, every row then every
/// column of `u` is replaced by its line solve. `vh`/`vv` may be null for
/// zero targets (pure smoothing).
void separable_passes(Plane& u, const Plane* vh, const Plane& wh, const Plane* vv, const Plane& wv,
                      std::span<const double> schedule, std::size_t threads);

}  // namespace detailprior::internal
