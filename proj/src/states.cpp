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

#include "eprkit/states.hpp"

#include <cmath>
#include <numbers>

namespace eprkit {

double Rng::uniform() {
  // 53 significant bits of the raw engine word; pinned, distribution-free.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::gaussian_complex() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

ComplexMatrix Rng::gaussian_matrix(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = gaussian_complex();
  return m;
}

ComplexMatrix Rng::haar_unitary(Index dim) {
  if (dim < 1) throw ValueError("haar_unitary: dimension must be >= 1");
  const ComplexMatrix g = gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

ComplexVector Rng::unit_vector(Index dim) {
  if (dim < 1) throw ValueError("unit_vector: dimension must be >= 1");
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = gaussian_complex();
  return v / v.norm();
}

PureState Rng::pure_state(std::vector<Index> factor_dims) {
  Index total = 1;
  for (Index d : factor_dims) total *= d;
  return PureState(std::move(factor_dims), unit_vector(total));
}

DensityOperator Rng::density(Index dim, Index rank) {
  if (rank < 1 || rank > dim) {
    throw ValueError("density: rank must lie in [1, dim]");
  }
  const ComplexMatrix g = gaussian_matrix(dim, rank);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m));
}

MeasurementBasis Rng::measurement_basis(Index dim_a, Index dim_b) {
  const ComplexMatrix u = haar_unitary(dim_a * dim_b);
  std::vector<PureState> vectors;
  vectors.reserve(static_cast<std::size_t>(u.cols()));
  for (Index j = 0; j < u.cols(); ++j) {
    vectors.emplace_back(std::vector<Index>{dim_a, dim_b},
                         ComplexVector(u.col(j)));
  }
  return MeasurementBasis(dim_a, dim_b, std::move(vectors));
}

PureState bell_state(int k) {
  const double w = 1.0 / std::sqrt(2.0);
  ComplexVector amps = ComplexVector::Zero(4);
  switch (k) {
    case 0: amps(0) = w; amps(3) = w; break;
    case 1: amps(0) = w; amps(3) = -w; break;
    case 2: amps(1) = w; amps(2) = w; break;
    case 3: amps(1) = w; amps(2) = -w; break;
    default:
      throw ValueError("bell_state: index must be in 0..3");
  }
  return PureState({2, 2}, std::move(amps));
}

MeasurementBasis bell_basis() {
  std::vector<PureState> vectors;
  for (int k = 0; k < 4; ++k) vectors.push_back(bell_state(k));
  return MeasurementBasis(2, 2, std::move(vectors));
}

DensityOperator werner(double p) {
  if (p < 0.0 || p > 1.0) {
    throw ValueError("werner: mixing parameter must lie in [0, 1]");
  }
  ComplexMatrix m = p * bell_state(0).projector() +
                    (1.0 - p) * 0.25 * ComplexMatrix::Identity(4, 4);
  return DensityOperator(std::move(m));
}

ComplexMatrix haar_unitary(Index dim, Seed seed) {
  return Rng(seed).haar_unitary(dim);
}

PureState random_pure(std::vector<Index> factor_dims, Seed seed) {
  return Rng(seed).pure_state(std::move(factor_dims));
}

DensityOperator random_density(Index dim, Index rank, Seed seed) {
  return Rng(seed).density(dim, rank);
}

}  // namespace eprkit
