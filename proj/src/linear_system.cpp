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

#include "linear_system.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "detailprior/error.hpp"
#include "parallel.hpp"

namespace detailprior::internal {

Eigen::VectorXd solve_dense_spd(std::size_t width, std::size_t height, const Plane& wh,
                                const Plane& wv, double lambda, const Eigen::VectorXd& rhs) {
  const auto n = static_cast<Eigen::Index>(width * height);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);

  auto couple = [&](Eigen::Index p, Eigen::Index q, double a) {
    m(p, p) += a;
    m(q, q) += a;
    m(p, q) -= a;
    m(q, p) -= a;
  };
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x + 1 < width; ++x) {
      const auto p = static_cast<Eigen::Index>(y * width + x);
      couple(p, p + 1, lambda * wh.at(x, y));
    }
  }
  for (std::size_t y = 0; y + 1 < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const auto p = static_cast<Eigen::Index>(y * width + x);
      couple(p, p + static_cast<Eigen::Index>(width), lambda * wv.at(x, y));
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw InternalError("dense solve: system matrix is not positive definite");
  }
  Eigen::VectorXd x = llt.solve(rhs);
  const double rhs_norm = std::max(rhs.norm(), 1e-30);
  const double residual = (m * x - rhs).norm() / rhs_norm;
  if (!(residual <= 1e-8)) {
    throw InternalError("dense solve: relative residual " + std::to_string(residual) +
                        " exceeds 1e-8");
  }
  return x;
}

void solve_line_inplace(std::span<double> x, std::span<const double> v, std::span<const double> w,
                        double lambda, std::span<double> scratch) {
  const std::size_t n = x.size();
  if (n == 0) return;
  auto target = [&](std::size_t e) { return v.empty() ? 0.0 : v[e]; };

  double c_prev = 0.0;
  double d_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w_left = i > 0 ? w[i - 1] : 0.0;
    const double v_left = i > 0 ? target(i - 1) : 0.0;
    const double w_right = i + 1 < n ? w[i] : 0.0;
    const double v_right = i + 1 < n ? target(i) : 0.0;
    thomas_forward(x[i], w_left, v_left, w_right, v_right, lambda, c_prev, d_prev, scratch[i],
                   x[i]);
    c_prev = scratch[i];
    d_prev = x[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] = x[i] - scratch[i] * x[i + 1];
}

namespace {

void horizontal_pass(Plane& u, const Plane* vh, const Plane& wh, double lambda,
                     std::size_t threads) {
  const std::size_t width = u.width();
  parallel_for(u.height(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch(width);
    for (std::size_t y = begin; y < end; ++y) {
      std::span<const double> v;
      if (vh != nullptr) v = vh->row(y);
      solve_line_inplace(u.row(y), v, wh.row(y), lambda, scratch);
    }
  });
}

// Columns are swept together row by row so memory access stays contiguous;
// each column still sees exactly the arithmetic of solve_line_inplace.
void vertical_pass(Plane& u, const Plane* vv, const Plane& wv, double lambda,
                   std::size_t threads) {
  const std::size_t width = u.width();
  const std::size_t height = u.height();
  parallel_for(width, threads, [&](std::size_t begin, std::size_t end) {
    const std::size_t span = end - begin;
    std::vector<double> c(span * height);
    for (std::size_t y = 0; y < height; ++y) {
      double* d_row = u.row(y).data();
      const double* d_above = y > 0 ? u.row(y - 1).data() : nullptr;
      const double* w_up = y > 0 ? wv.row(y - 1).data() : nullptr;
      const double* w_down = y + 1 < height ? wv.row(y).data() : nullptr;
      const double* v_up = (y > 0 && vv != nullptr) ? vv->row(y - 1).data() : nullptr;
      const double* v_down = (y + 1 < height && vv != nullptr) ? vv->row(y).data() : nullptr;
      double* c_row = c.data() + y * span;
      const double* c_above = y > 0 ? c.data() + (y - 1) * span : nullptr;
      for (std::size_t x = begin; x < end; ++x) {
        const std::size_t k = x - begin;
        thomas_forward(d_row[x], w_up ? w_up[x] : 0.0, v_up ? v_up[x] : 0.0,
                       w_down ? w_down[x] : 0.0, v_down ? v_down[x] : 0.0, lambda,
                       c_above ? c_above[k] : 0.0, d_above ? d_above[x] : 0.0, c_row[k],
                       d_row[x]);
      }
    }
    for (std::size_t y = height - 1; y-- > 0;) {
      double* x_row = u.row(y).data();
      const double* x_below = u.row(y + 1).data();
      const double* c_row = c.data() + y * span;
      for (std::size_t x = begin; x < end; ++x) {
        x_row[x] = x_row[x] - c_row[x - begin] * x_below[x];
      }
    }
  });
}

}  // namespace

void separable_passes(Plane& u, const Plane* vh, const Plane& wh, const Plane* vv, const Plane& wv,
                      std::span<const double> schedule, std::size_t threads) {
  if (u.empty()) return;
  for (const double lambda_t : schedule) {
    horizontal_pass(u, vh, wh, lambda_t, threads);
    vertical_pass(u, vv, wv, lambda_t, threads);
  }
}

}  // namespace detailprior::internal
