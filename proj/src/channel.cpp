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

#include "eprkit/channel.hpp"

#include <cmath>

namespace eprkit {

ChannelMap::ChannelMap(Index src_dim, Index dst_dim,
                       std::vector<AntilinearMap> kraus,
                       std::optional<ComplexMatrix> origin)
    : src_dim_(src_dim),
      dst_dim_(dst_dim),
      kraus_(std::move(kraus)),
      origin_(std::move(origin)) {
  for (const auto& k : kraus_) {
    if (k.src_dim() != src_dim_ || k.dst_dim() != dst_dim_) {
      throw DimensionError("ChannelMap: Kraus element shape mismatch");
    }
  }
}

ChannelMap channel_from_vectors(const std::vector<ComplexVector>& vectors,
                                Index dim_a, Index dim_b) {
  std::vector<AntilinearMap> kraus;
  kraus.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != dim_a * dim_b) {
      throw DimensionError("channel_from_vectors: vector length != dim_a * dim_b");
    }
    kraus.push_back(smap_from_vector(
        PureState::unnormalized({dim_a, dim_b}, v), SmapDirection::BA));
  }
  return ChannelMap(dim_a, dim_b, std::move(kraus));
}

ChannelMap channel_from_density(const DensityOperator& rho_ab, Index dim_a,
                                Index dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) {
    throw DimensionError("channel_from_density: dims do not factor the operator");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_ab.matrix());
  std::vector<AntilinearMap> kraus;
  // descending eigenvalue order; components below the support cutoff drop out
  for (Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= RANK_TOL) continue;
    const ComplexVector weighted =
        std::sqrt(lambda) * es.eigenvectors().col(i);
    kraus.push_back(smap_from_vector(
        PureState::unnormalized({dim_a, dim_b}, weighted), SmapDirection::BA));
  }
  return ChannelMap(dim_a, dim_b, std::move(kraus), rho_ab.matrix());
}

ComplexMatrix apply_channel(const ChannelMap& channel,
                            const ComplexMatrix& omega) {
  if (omega.rows() != channel.src_dim() || omega.cols() != channel.src_dim()) {
    throw DimensionError("apply_channel: input is not square on the source space");
  }
  ComplexMatrix out =
      ComplexMatrix::Zero(channel.dst_dim(), channel.dst_dim());
  const ComplexMatrix omega_bar = omega.conjugate();
  for (const auto& s : channel.kraus()) {
    out += s.kmatrix() * omega_bar * s.kmatrix().adjoint();
  }
  return out;
}

LuedersUpdate lueders_update(const DensityOperator& rho_ab, Index dim_a,
                             Index dim_b, const ComplexVector& phi_a) {
  if (rho_ab.dim() != dim_a * dim_b) {
    throw DimensionError("lueders_update: dims do not factor the operator");
  }
  if (phi_a.size() != dim_a) {
    throw DimensionError("lueders_update: vector not on the A factor");
  }
  if (std::abs(phi_a.norm() - 1.0) > TOL_NORM) {
    throw InvariantViolation("unit_norm", "measurement vector is not normalized");
  }
  const ComplexMatrix projector_full =
      tensor(phi_a * phi_a.adjoint(), ComplexMatrix::Identity(dim_b, dim_b));
  ComplexMatrix post = projector_full * rho_ab.matrix() * projector_full;
  post = 0.5 * (post + post.adjoint().eval());
  const double probability = post.trace().real();
  return {probability, DensityOperator(std::move(post), true)};
}

ComplexMatrix dual_channel(const ChannelMap& channel, const ComplexMatrix& y) {
  if (y.rows() != channel.dst_dim() || y.cols() != channel.dst_dim()) {
    throw DimensionError("dual_channel: observable is not square on the target space");
  }
  ComplexMatrix x = ComplexMatrix::Zero(channel.src_dim(), channel.src_dim());
  const ComplexMatrix y_t = y.transpose();
  for (const auto& s : channel.kraus()) {
    x += s.kmatrix().transpose() * y_t * s.kmatrix().conjugate();
  }
  return x;
}

DecompositionIndependenceReport channel_decomposition_independence(
    const DensityOperator& rho_ab, Index dim_a, Index dim_b,
    const std::vector<ComplexVector>& alt_decomposition) {
  ComplexMatrix resum = ComplexMatrix::Zero(rho_ab.dim(), rho_ab.dim());
  for (const auto& v : alt_decomposition) {
    if (v.size() != rho_ab.dim()) {
      throw DimensionError("channel_decomposition_independence: vector length mismatch");
    }
    resum += v * v.adjoint();
  }
  if (!approx_equal(resum, rho_ab.matrix(), TOL_EQ)) {
    throw InvariantViolation("decomposition_sum",
                             "alternative decomposition does not sum to the operator");
  }
  const ChannelMap canonical = channel_from_density(rho_ab, dim_a, dim_b);
  const ChannelMap alternative =
      channel_from_vectors(alt_decomposition, dim_a, dim_b);

  double worst = 0.0;
  ComplexMatrix unit = ComplexMatrix::Zero(dim_a, dim_a);
  for (Index k = 0; k < dim_a; ++k) {
    for (Index l = 0; l < dim_a; ++l) {
      unit.setZero();
      unit(k, l) = 1.0;
      worst = std::max(worst, max_abs_diff(apply_channel(canonical, unit),
                                           apply_channel(alternative, unit)));
    }
  }
  return {worst, worst <= 1e-9};
}

ComplexMatrix conjugated_choi_matrix(const ChannelMap& channel) {
  const Index da = channel.src_dim(), db = channel.dst_dim();
  ComplexMatrix choi = ComplexMatrix::Zero(da * db, da * db);
  ComplexMatrix unit = ComplexMatrix::Zero(da, da);
  for (Index k = 0; k < da; ++k) {
    for (Index l = 0; l < da; ++l) {
      unit.setZero();
      unit(k, l) = 1.0;
      // The input conjugation cancels the channel's internal one, so the
      // conjugated map acts as an ordinary Kraus sum on matrix units.
      ComplexMatrix block = ComplexMatrix::Zero(db, db);
      for (const auto& s : channel.kraus()) {
        block += s.kmatrix() * unit * s.kmatrix().adjoint();
      }
      choi.block(k * db, l * db, db, db) = block;
    }
  }
  return choi;
}

}  // namespace eprkit
