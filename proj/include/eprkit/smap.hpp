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

#include <vector>

#include "eprkit/antilinear.hpp"
#include "eprkit/core.hpp"

namespace eprkit {

/// Which of the two antilinear maps a bipartite vector induces:
/// BA carries Alice's factor into Bob's, AB the reverse.
enum class SmapDirection { BA, AB };

/// The two factor labels of a bipartite state.
enum class Factor { A, B };

/// The canonical antilinear Hilbert-Schmidt map of a bipartite vector.
/// For direction BA the kmatrix is the transpose of psi's coefficient
/// matrix C; for AB it is C itself. Built directly from amplitudes, so it
/// is manifestly independent of any sum representation of psi.
AntilinearMap smap_from_vector(const PureState& psi, SmapDirection direction);

/// Inverse of the Hilbert-Schmidt bijection: the bipartite vector whose
/// s-map in `direction` has this kmatrix. Round-trips smap_from_vector
/// exactly. The result may be unnormalized.
PureState vector_from_smap(const AntilinearMap& map, SmapDirection direction);

struct MeasureUpdate {
  double probability;  // squared norm of the prepared vector
  PureState prepared;  // unnormalized post-measurement vector on A(x)B
};

/// Von Neumann measurement update on the A factor: the prepared vector is
/// (|phiA><phiA| (x) 1) psi = phiA (x) s^{BA} phiA.
MeasureUpdate measure_update_vector(const PureState& psi,
                                    const ComplexVector& phi_a);

/// Rebuilds psi as sum_k phi_k (x) s^{BA} phi_k from any family resolving
/// the identity on A. Throws InvariantViolation("resolution_of_identity")
/// if the family is incomplete.
PureState reconstruct_from_resolution(const PureState& psi,
                                      const std::vector<ComplexVector>& basis);

/// <psi, phi> recovered as the A-trace of s_phi^{AB} o s_psi^{BA}
/// (equivalently the B-trace of the mirrored composition).
Complex overlap_via_smaps(const PureState& phi, const PureState& psi);

struct ReducedDensities {
  DensityOperator rho_a;
  DensityOperator rho_b;
};

/// rho_B = s^{BA} o s^{AB} and rho_A = s^{AB} o s^{BA}, computed purely
/// through antilinear composition (no partial trace involved).
ReducedDensities reduced_densities_via_smaps(const PureState& psi);

/// psi = sum_j sqrt(p_j) left_j (x) right_j with orthonormal families and
/// weights p_j sorted descending. Coefficients keep all min(d_A, d_B)
/// entries including (numerical) zeros.
struct SchmidtDecomposition {
  std::vector<double> coefficients;  // p_j, descending
  ComplexMatrix left_vectors;        // d_A x r, orthonormal columns
  ComplexMatrix right_vectors;       // d_B x r, orthonormal columns

  std::size_t rank(double rank_tol = RANK_TOL) const;
  ComplexVector reconstruct() const;
};

SchmidtDecomposition schmidt(const PureState& psi);

struct JmapPair {
  AntilinearMap j_ba;
  AntilinearMap j_ab;
};

/// Partial antiunitaries of the polar decompositions
/// s^{BA} = j^{BA} sqrt(rho_A) = sqrt(rho_B) j^{BA} (and mirrored for AB),
/// unique on the support. Computed as s composed with the pseudo-inverse
/// square root of the reduced density, which restricts to the support
/// regardless of any degeneracy in the spectrum.
JmapPair polar_jmaps(const PureState& psi);

enum class EntanglementClass {
  Product,
  Partial,
  CompletelyEntangled,
  MaximallyEntangled,
};

const char* to_string(EntanglementClass c);

/// Classification from the Schmidt coefficients: product iff exactly one
/// p_j above RANK_TOL; completely entangled (w.r.t. the chosen factor) iff
/// the Schmidt rank equals that factor's dimension; maximally entangled iff
/// additionally the coefficients are equal within TOL_EQ and d_A = d_B.
EntanglementClass entanglement_class(const PureState& psi,
                                     Factor respect_to = Factor::A);

struct LocalTransformReport {
  double error_ba;  // max deviation in s_phi^{BA} = Y o s_psi^{BA} o X*
  double error_ab;  // max deviation in s_phi^{AB} = X o s_psi^{AB} o Y*
  bool consistent;  // both within TOL_EQ
};

/// How the s-maps transform under phi = (X (x) Y) psi.
LocalTransformReport local_transform_smap(const PureState& psi,
                                          const ComplexMatrix& x_on_a,
                                          const ComplexMatrix& y_on_b);

struct StabilizerResult {
  ComplexMatrix u_b;  // j^{BA} o U_A o j^{AB}, a linear unitary on B
  bool fixed;         // (U_A (x) U_B) psi = psi within TOL_EQ
  double error;       // max deviation of the fixed-point identity
};

/// Local stabilizer member of a maximally entangled psi: the partner
/// unitary U_B under which U_A (x) U_B fixes psi. Rejects inputs that are
/// not maximally entangled or not unitary.
StabilizerResult stabilizer_check(const PureState& psi,
                                  const ComplexMatrix& u_a);

}  // namespace eprkit
