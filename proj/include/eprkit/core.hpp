// Copyright 2026 The eprkit authors
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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "eprkit/errors.hpp"

namespace eprkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Numerical tolerances. Double precision leaves ample headroom at the
// factor dimensions this library targets (<= 32 per factor).
inline constexpr double TOL_NORM = 1e-9;   // state normalization, unit trace
inline constexpr double TOL_HERM = 1e-10;  // Hermiticity
inline constexpr double TOL_PSD = 1e-9;    // admissible eigenvalue negativity
inline constexpr double TOL_EQ = 1e-9;     // equality of computed matrices
inline constexpr double RANK_TOL = 1e-9;   // support membership cutoff

/// Largest absolute entry of a - b; the metric behind every TOL_EQ check.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tolerance = TOL_EQ);

bool is_hermitian(const ComplexMatrix& m, double tolerance = TOL_HERM);
bool is_unitary(const ComplexMatrix& m, double tolerance = 1e-10);

/// Unit vector on a tensor product of two or three labeled factors.
///
/// The composite index of (a, b) is a*d_B + b and of (a, b, c) is
/// a*d_B*d_C + b*d_C + c; every module relies on this one convention.
/// Post-measurement vectors may be held unnormalized via the factory.
class PureState {
 public:
  PureState(std::vector<Index> factor_dims, ComplexVector amplitudes);

  /// Skips the unit-norm check (measurement updates yield such vectors).
  static PureState unnormalized(std::vector<Index> factor_dims,
                                ComplexVector amplitudes);

  const std::vector<Index>& factor_dims() const { return factor_dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }
  std::size_t arity() const { return factor_dims_.size(); }
  bool normalized() const { return normalized_; }
  double norm() const { return amplitudes_.norm(); }

  /// Bipartite only: the d_A x d_B matrix C with C(a, b) = amplitude(a, b).
  ComplexMatrix coefficient_matrix() const;

  /// |psi><psi| as a dense matrix.
  ComplexMatrix projector() const;

 private:
  PureState(std::vector<Index> dims, ComplexVector amps, bool normalized);

  std::vector<Index> factor_dims_;
  ComplexVector amplitudes_;
  bool normalized_;
};

/// Positive semidefinite, unit-trace operator. Construction validates
/// Hermiticity, spectrum and trace; a subnormalized operator (trace <= 1)
/// carries measurement-outcome weight and must be flagged as such.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix, bool subnormalized = false);

  static DensityOperator from_pure(const PureState& psi);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool subnormalized() const { return subnormalized_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  ComplexMatrix matrix_;
  bool subnormalized_;
};

/// Kronecker product, consistent with the composite index convention.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out every factor except `keep` (0-based position in `dims`).
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<Index>& dims, std::size_t keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<Index>& dims,
                              std::size_t keep);

/// Hermitian PSD square root. Eigenvalues in [-TOL_PSD, 0] are clamped to
/// zero; anything below -TOL_PSD raises InvariantViolation("psd").
ComplexMatrix matrix_sqrt(const ComplexMatrix& psd);

/// Moore-Penrose inverse of a Hermitian PSD matrix, restricted to the
/// support (eigenvalues above `rank_tol`).
ComplexMatrix pseudo_inverse(const ComplexMatrix& psd,
                             double rank_tol = RANK_TOL);

/// Inverse square root on the support, zero elsewhere.
ComplexMatrix pseudo_inverse_sqrt(const ComplexMatrix& psd,
                                  double rank_tol = RANK_TOL);

/// Projector onto the span of eigenvectors with eigenvalue > rank_tol.
ComplexMatrix support_projector(const ComplexMatrix& psd,
                                double rank_tol = RANK_TOL);

/// Sum of singular values, Tr sqrt(M* M).
double trace_norm(const ComplexMatrix& m);

/// Transition probability (Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2.
double fidelity(const DensityOperator& rho1, const DensityOperator& rho2);
double fidelity(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// Permutation taking e_{a*dB+b} on A(x)B to e_{b*dA+a} on B(x)A.
ComplexMatrix swap_factors(Index dim_a, Index dim_b);

}  // namespace eprkit
