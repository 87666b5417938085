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

#include "eprkit/core.hpp"

#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace eprkit {

namespace {

Index checked_product(const std::vector<Index>& dims) {
  Index total = 1;
  for (Index d : dims) {
    if (d < 1) throw DimensionError("factor dimensions must be >= 1");
    total *= d;
  }
  return total;
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvariantViolation("finite", std::string(what) + " has NaN/Inf entries");
  }
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tolerance) {
  return max_abs_diff(a, b) <= tolerance;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= tolerance;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs_diff(m.adjoint() * m, id) <= tolerance;
}

// --------------------------------------------------------------------------
// PureState

PureState::PureState(std::vector<Index> dims, ComplexVector amps,
                     bool normalized)
    : factor_dims_(std::move(dims)),
      amplitudes_(std::move(amps)),
      normalized_(normalized) {
  if (factor_dims_.size() != 2 && factor_dims_.size() != 3) {
    throw DimensionError("PureState needs 2 or 3 labeled factors");
  }
  Index total = checked_product(factor_dims_);
  if (amplitudes_.size() != total) {
    throw DimensionError("PureState: amplitude count does not match factor dims");
  }
  require_finite(amplitudes_, "PureState amplitudes");
  if (normalized_ && std::abs(amplitudes_.norm() - 1.0) > TOL_NORM) {
    throw InvariantViolation("unit_norm", "PureState amplitudes are not normalized");
  }
}

PureState::PureState(std::vector<Index> factor_dims, ComplexVector amplitudes)
    : PureState(std::move(factor_dims), std::move(amplitudes), true) {}

PureState PureState::unnormalized(std::vector<Index> factor_dims,
                                  ComplexVector amplitudes) {
  return PureState(std::move(factor_dims), std::move(amplitudes), false);
}

ComplexMatrix PureState::coefficient_matrix() const {
  if (arity() != 2) {
    throw DimensionError("coefficient_matrix is defined for bipartite states");
  }
  const Index da = factor_dims_[0], db = factor_dims_[1];
  ComplexMatrix c(da, db);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b) c(a, b) = amplitudes_(a * db + b);
  return c;
}

ComplexMatrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

// --------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(ComplexMatrix matrix, bool subnormalized)
    : matrix_(std::move(matrix)), subnormalized_(subnormalized) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw DimensionError("DensityOperator matrix must be square");
  }
  require_finite(matrix_, "DensityOperator matrix");
  if (!is_hermitian(matrix_, TOL_HERM)) {
    throw InvariantViolation("hermitian", "density matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -TOL_PSD) {
    throw InvariantViolation("psd", "density matrix has a negative eigenvalue");
  }
  const double tr = matrix_.trace().real();
  if (subnormalized_) {
    if (tr > 1.0 + TOL_NORM || tr < -TOL_NORM) {
      throw InvariantViolation("unit_trace",
                               "subnormalized density operator needs trace in [0, 1]");
    }
  } else if (std::abs(tr - 1.0) > TOL_NORM) {
    throw InvariantViolation("unit_trace", "density operator trace is not 1");
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.projector(), !psi.normalized());
}

// --------------------------------------------------------------------------
// Operations

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<Index>& dims, std::size_t keep) {
  if (rho.rows() != rho.cols()) {
    throw DimensionError("partial_trace: matrix must be square");
  }
  if (keep >= dims.size()) {
    throw DimensionError("partial_trace: keep label out of range");
  }
  const Index total = checked_product(dims);
  if (total != rho.rows()) {
    throw DimensionError("partial_trace: factor dims do not match matrix size");
  }
  const Index dk = dims[keep];
  // stride of the kept factor, and the index pattern of the traced rest
  Index stride = 1;
  for (std::size_t f = keep + 1; f < dims.size(); ++f) stride *= dims[f];
  const Index rest = total / dk;

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i) {
    for (Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Index r = 0; r < rest; ++r) {
        // split the rest-index around the kept factor's position
        const Index hi = r / stride, lo = r % stride;
        const Index row = (hi * dk + i) * stride + lo;
        const Index col = (hi * dk + j) * stride + lo;
        acc += rho(row, col);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<Index>& dims,
                              std::size_t keep) {
  return DensityOperator(partial_trace(rho.matrix(), dims, keep),
                         rho.subnormalized());
}

ComplexMatrix matrix_sqrt(const ComplexMatrix& psd) {
  if (!is_hermitian(psd, TOL_HERM)) {
    throw InvariantViolation("hermitian", "matrix_sqrt input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(psd);
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -TOL_PSD) {
      throw InvariantViolation("psd", "matrix_sqrt input has a negative eigenvalue");
    }
    lambda(i) = lambda(i) > 0.0 ? std::sqrt(lambda(i)) : 0.0;
  }
  return es.eigenvectors() * lambda.asDiagonal() *
         es.eigenvectors().adjoint();
}

namespace {

ComplexMatrix spectral_apply(const ComplexMatrix& psd, double rank_tol,
                             double (*f)(double)) {
  if (!is_hermitian(psd, TOL_HERM)) {
    throw InvariantViolation("hermitian", "spectral function input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(psd);
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -TOL_PSD) {
      throw InvariantViolation("psd", "spectral function input has a negative eigenvalue");
    }
    lambda(i) = lambda(i) > rank_tol ? f(lambda(i)) : 0.0;
  }
  return es.eigenvectors() * lambda.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

ComplexMatrix pseudo_inverse(const ComplexMatrix& psd, double rank_tol) {
  return spectral_apply(psd, rank_tol, +[](double x) { return 1.0 / x; });
}

ComplexMatrix pseudo_inverse_sqrt(const ComplexMatrix& psd, double rank_tol) {
  return spectral_apply(psd, rank_tol,
                        +[](double x) { return 1.0 / std::sqrt(x); });
}

ComplexMatrix support_projector(const ComplexMatrix& psd, double rank_tol) {
  return spectral_apply(psd, rank_tol, +[](double) { return 1.0; });
}

double trace_norm(const ComplexMatrix& m) {
  require_finite(m, "trace_norm input");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double fidelity(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw DimensionError("fidelity: operands have different dimensions");
  }
  // Tr sqrt(sqrt(r1) r2 sqrt(r1)) equals the trace norm of
  // sqrt(r1) sqrt(r2). Rank-deficient operators carry roundoff
  // eigenvalues of order 1e-16 whose square roots (~1e-8) would pollute
  // the singular values, so the square roots here drop spectrum below a
  // cutoff that is far under any genuine eigenvalue at these dimensions.
  constexpr double spectrum_cutoff = 1e-12;
  const auto sqrt_fn = +[](double x) { return std::sqrt(x); };
  const ComplexMatrix product = spectral_apply(rho1, spectrum_cutoff, sqrt_fn) *
                                spectral_apply(rho2, spectrum_cutoff, sqrt_fn);
  const double root = trace_norm(product);
  return root * root;
}

double fidelity(const DensityOperator& rho1, const DensityOperator& rho2) {
  return fidelity(rho1.matrix(), rho2.matrix());
}

ComplexMatrix swap_factors(Index dim_a, Index dim_b) {
  ComplexMatrix s = ComplexMatrix::Zero(dim_a * dim_b, dim_a * dim_b);
  for (Index a = 0; a < dim_a; ++a)
    for (Index b = 0; b < dim_b; ++b) s(b * dim_a + a, a * dim_b + b) = 1.0;
  return s;
}

}  // namespace eprkit
