/*
 * Copyright 2026 the projcal authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROJCAL_KERNELS_HPP_
#define PROJCAL_KERNELS_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace projcal {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Matern covariance hyperparameters: roughness alpha, range psi, scale tau.
/// The kernel itself is normalized so that its value at zero distance is 1;
/// tau^2 multiplies it wherever a Gram matrix is assembled.
struct KernelSpec {
  double alpha = 2.5;
  double psi = 1.0;
  double tau = 1.0;

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("KernelSpec: alpha must be positive");
    if (!(psi > 0.0)) throw std::invalid_argument("KernelSpec: psi must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("KernelSpec: tau must be positive");
  }
};

namespace detail {

inline bool is_near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace detail

/// Matern correlation at distance d >= 0 (no tau^2 factor).
///
/// Half-integer roughness {1/2, 3/2, 5/2, 7/2} uses the closed-form
/// polynomial-times-exponential expressions. Small integer roughness
/// {1, 2, 3} is evaluated through std::cyl_bessel_k; these arise as
/// nu = alpha - p/2 in the kernel ridge regression step when p is odd.
/// Any other roughness is rejected.
inline double matern(double d, const KernelSpec& spec) {
  if (d < 0.0) throw std::invalid_argument("matern: distance must be nonnegative");
  const double u = std::sqrt(2.0 * spec.alpha) * d / spec.psi;
  if (spec.alpha == 0.5) return std::exp(-u);
  if (spec.alpha == 1.5) return (1.0 + u) * std::exp(-u);
  if (spec.alpha == 2.5) return (1.0 + u + u * u / 3.0) * std::exp(-u);
  if (spec.alpha == 3.5) return (1.0 + u + 0.4 * u * u + u * u * u / 15.0) * std::exp(-u);
  if (detail::is_near_integer(spec.alpha) && spec.alpha >= 1.0 && spec.alpha <= 3.0) {
    // u^nu K_nu(u) -> Gamma(nu) 2^(nu-1) as u -> 0; below that scale the
    // Bessel product underflows to 0*inf, so return the limit directly.
    if (u < 1e-10) return 1.0;
    const double nu = std::round(spec.alpha);
    return std::pow(u, nu) * std::cyl_bessel_k(nu, u) / (std::tgamma(nu) * std::pow(2.0, nu - 1.0));
  }
  throw std::invalid_argument("matern: unsupported roughness alpha=" + std::to_string(spec.alpha));
}

/// Gram matrix M with M_ij = tau^2 * matern(||x_i - x_j||) + nugget * 1{i==j}.
/// Rows of `points` are locations. The upper triangle is computed and
/// mirrored so the result is symmetric bit for bit.
inline Matrix gram(const Matrix& points, const KernelSpec& spec, double nugget = 0.0) {
  spec.validate();
  if (points.rows() < 1) throw std::invalid_argument("gram: need at least one point");
  if (nugget < 0.0) throw std::invalid_argument("gram: nugget must be nonnegative");
  const Eigen::Index n = points.rows();
  const double t2 = spec.tau * spec.tau;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = t2 + nugget;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = t2 * matern((points.row(i) - points.row(j)).norm(), spec);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

/// Cross-covariance tau^2 * matern(||a_i - b_j||) between two point sets.
inline Matrix cross_gram(const Matrix& a, const Matrix& b, const KernelSpec& spec) {
  const double t2 = spec.tau * spec.tau;
  Matrix m(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      m(i, j) = t2 * matern((a.row(i) - b.row(j)).norm(), spec);
  return m;
}

/// Cholesky with a jitter ladder: start at 1e-10 * trace/n, escalate by 10x,
/// at most 6 attempts. Throws on a matrix that never factors.
inline Eigen::LLT<Matrix> cholesky_with_jitter(Matrix m, const char* what = "Gram matrix") {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() == Eigen::Success) return llt;
  const Eigen::Index n = m.rows();
  double jitter = 1e-10 * m.trace() / static_cast<double>(n);
  if (!(jitter > 0.0)) jitter = 1e-12;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Matrix jittered = m + jitter * Matrix::Identity(n, n);
    llt.compute(jittered);
    if (llt.info() == Eigen::Success) return llt;
    jitter *= 10.0;
  }
  throw std::runtime_error(std::string("non-PD ") + what + ": Cholesky failed after jitter escalation");
}

}  // namespace projcal

#endif  // PROJCAL_KERNELS_HPP_
