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

#include <optional>
#include <vector>

#include "eprkit/antilinear.hpp"
#include "eprkit/core.hpp"
#include "eprkit/smap.hpp"

namespace eprkit {

/// EPR channel map from Alice to Bob: an ordered antilinear Kraus family
/// {s_i} realizing omega |-> sum_i s_i omega s_i*. The canonical family
/// comes from the eigendecomposition of the generating density operator,
/// which keeps the stored representation deterministic; other
/// decompositions of the same operator induce the same map.
class ChannelMap {
 public:
  ChannelMap(Index src_dim, Index dst_dim, std::vector<AntilinearMap> kraus,
             std::optional<ComplexMatrix> origin = std::nullopt);

  Index src_dim() const { return src_dim_; }
  Index dst_dim() const { return dst_dim_; }
  const std::vector<AntilinearMap>& kraus() const { return kraus_; }

  /// The generating density operator on A(x)B, when the channel was built
  /// from one.
  const std::optional<ComplexMatrix>& origin() const { return origin_; }

 private:
  Index src_dim_;
  Index dst_dim_;
  std::vector<AntilinearMap> kraus_;
  std::optional<ComplexMatrix> origin_;
};

/// Channel map of a density operator on A(x)B: eigendecomposition vectors
/// weighted by sqrt(eigenvalue) each contribute their BA s-map; components
/// below RANK_TOL are dropped.
ChannelMap channel_from_density(const DensityOperator& rho_ab, Index dim_a,
                                Index dim_b);

/// Same construction from an explicit decomposition sum_i |psi_i><psi_i|.
ChannelMap channel_from_vectors(const std::vector<ComplexVector>& vectors,
                                Index dim_a, Index dim_b);

/// sum_i K_i conj(omega) K_i^dagger. Accepts any square matrix on A
/// (channels extend to all of B(H^A)); maps PSD inputs to PSD outputs.
ComplexMatrix apply_channel(const ChannelMap& channel,
                            const ComplexMatrix& omega);

struct LuedersUpdate {
  double probability;          // <phi| rho_A |phi>
  DensityOperator post_state;  // (pi (x) 1) rho (pi (x) 1), subnormalized
};

/// Measurement update on the A factor of a composite density operator. The
/// post state factorizes as pi (x) Phi(pi) with Phi the channel map of rho.
LuedersUpdate lueders_update(const DensityOperator& rho_ab, Index dim_a,
                             Index dim_b, const ComplexVector& phi_a);

/// The observable transport dual to apply_channel: the unique X on A with
/// Tr(pi X) = Tr(Phi(pi) Y) for every rank-one pi, namely
/// sum_i K_i^T Y^T conj(K_i). Hermitian Y gives Hermitian X.
ComplexMatrix dual_channel(const ChannelMap& channel, const ComplexMatrix& y);

struct DecompositionIndependenceReport {
  double max_error;  // worst output deviation over a spanning input set
  bool consistent;
};

/// Verifies that an alternative decomposition of rho_ab (vectors with
/// sum |psi_i><psi_i| = rho_ab) induces the same channel map as the
/// canonical eigendecomposition, by comparing outputs on all matrix units.
DecompositionIndependenceReport channel_decomposition_independence(
    const DensityOperator& rho_ab, Index dim_a, Index dim_b,
    const std::vector<ComplexVector>& alt_decomposition);

/// Choi matrix of the (linear, completely positive) map
/// omega |-> Phi(conj(omega)); its positivity is the *-copositivity of Phi.
ComplexMatrix conjugated_choi_matrix(const ChannelMap& channel);

}  // namespace eprkit
