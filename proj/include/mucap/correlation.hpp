// SPDX-License-Identifier: Apache-2.0
//
// mucap: MU-MIMO ergodic sum-rate capacity simulation and analysis
// Copyright (C) 2026 The mucap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MUCAP_CORRELATION_HPP
#define MUCAP_CORRELATION_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>

#include "mucap/error.hpp"

namespace mucap {

// Exponential correlation with entries beyond the band half-width zeroed.
// l_band = n-1 is the full matrix, 1 is tridiagonal, 2 pentadiagonal.
struct CorrelationSpec {
  std::size_t n = 1;
  double rho = 0.0;
  std::size_t l_band = 0;

  static CorrelationSpec full(std::size_t n, double rho) { return CorrelationSpec{n, rho, n == 0 ? 0 : n - 1}.validated(); }

  CorrelationSpec validated() const {
    if (n == 0) throw DomainError("correlation dimension must be positive");
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho out of range [0, 1): " + std::to_string(rho));
    if (l_band > n - 1) throw DomainError("l_band exceeds n-1 (l_band=" + std::to_string(l_band) + ", n=" + std::to_string(n) + ")");
    return *this;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "CorrelationSpec{n=" << n << ", rho=" << rho << ", l_band=" << l_band << "}";
    return os.str();
  }

  friend bool operator==(const CorrelationSpec&, const CorrelationSpec&) = default;
};

// Complex Hermitian matrix. The upper triangle is always filled from the
// conjugated lower triangle and the diagonal is real, so the symmetry holds
// bit-exactly by construction.
class HermitianMatrix {
 public:
  using Matrix = Eigen::MatrixXcd;

  HermitianMatrix() = default;

  static HermitianMatrix from_lower(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("Hermitian matrix must be square", static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    HermitianMatrix h;
    const Eigen::Index n = m.rows();
    h.m_.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      h.m_(j, j) = m(j, j).real();
      for (Eigen::Index i = j + 1; i < n; ++i) {
        h.m_(i, j) = m(i, j);
        h.m_(j, i) = std::conj(m(i, j));
      }
    }
    return h;
  }

  static HermitianMatrix identity(std::size_t n) { return from_lower(Matrix::Identity(n, n)); }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Matrix m_;
};

struct PsdReport {
  double min_eig = 0.0;
  bool is_psd = false;
};

enum class PsdPolicy { error, clamp };

inline constexpr double default_psd_tol = 1e-12;

inline HermitianMatrix build_banded_correlation(const CorrelationSpec& spec) {
  spec.validated();
  const auto n = static_cast<Eigen::Index>(spec.n);
  HermitianMatrix::Matrix m = HermitianMatrix::Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const auto lag = static_cast<std::size_t>(i - j);
      if (lag <= spec.l_band) m(i, j) = std::pow(spec.rho, static_cast<double>(lag));
    }
  }
  return HermitianMatrix::from_lower(m);
}

namespace detail {

inline std::string fingerprint(const HermitianMatrix& m) {
  std::ostringstream os;
  os << "dim=" << m.dim() << " trace=" << m.matrix().trace().real() << " frob=" << m.matrix().norm();
  return os.str();
}

inline Eigen::SelfAdjointEigenSolver<HermitianMatrix::Matrix> eigen(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<HermitianMatrix::Matrix> es(m.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigendecomposition failed (" + fingerprint(m) + ")");
  return es;
}

}  // namespace detail

inline PsdReport psd_check(const HermitianMatrix& m, double tol = default_psd_tol) {
  if (!(tol >= 0.0)) throw DomainError("psd tolerance must be non-negative");
  const auto es = detail::eigen(m);
  const double min_eig = es.eigenvalues().minCoeff();
  return {min_eig, min_eig >= -tol};
}

// Principal square root S of a PSD Hermitian matrix, S S = m, via the
// eigendecomposition. Eigenvalues in [-tol, 0) are clamped to zero; with
// PsdPolicy::clamp every negative eigenvalue is (the diagonal is not
// renormalized).
inline HermitianMatrix matrix_sqrt(const HermitianMatrix& m, double tol = default_psd_tol, PsdPolicy policy = PsdPolicy::error,
                                   const std::optional<CorrelationSpec>& origin = std::nullopt) {
  if (!(tol >= 0.0)) throw DomainError("psd tolerance must be non-negative");
  const auto es = detail::eigen(m);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double min_eig = lambda.minCoeff();
  if (min_eig < -tol && policy == PsdPolicy::error) {
    std::ostringstream os;
    os << "correlation matrix is not positive semidefinite: min_eig=" << min_eig << " < -" << tol;
    if (origin) os << " for " << origin->describe();
    throw NotPsdError(os.str(), min_eig);
  }
  const Eigen::VectorXd root = lambda.cwiseMax(0.0).cwiseSqrt();
  const HermitianMatrix::Matrix s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  return HermitianMatrix::from_lower(s);
}

}  // namespace mucap

#endif  // MUCAP_CORRELATION_HPP
