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

#include "eprkit/smap.hpp"

#include <algorithm>
#include <cmath>

namespace eprkit {

namespace {

void require_bipartite(const PureState& psi, const char* who) {
  if (psi.arity() != 2) {
    throw DimensionError(std::string(who) + ": state must be bipartite");
  }
}

}  // namespace

AntilinearMap smap_from_vector(const PureState& psi, SmapDirection direction) {
  require_bipartite(psi, "smap_from_vector");
  ComplexMatrix c = psi.coefficient_matrix();
  return direction == SmapDirection::BA ? AntilinearMap(c.transpose())
                                        : AntilinearMap(std::move(c));
}

PureState vector_from_smap(const AntilinearMap& map, SmapDirection direction) {
  // Undo the kmatrix convention of smap_from_vector: BA stores C^T, AB
  // stores C, where C(a, b) is the amplitude of the composite index (a, b).
  ComplexMatrix c = direction == SmapDirection::BA
                        ? ComplexMatrix(map.kmatrix().transpose())
                        : map.kmatrix();
  const Index da = c.rows(), db = c.cols();
  ComplexVector amps(da * db);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b) amps(a * db + b) = c(a, b);
  if (std::abs(amps.norm() - 1.0) <= TOL_NORM) {
    return PureState({da, db}, std::move(amps));
  }
  return PureState::unnormalized({da, db}, std::move(amps));
}

MeasureUpdate measure_update_vector(const PureState& psi,
                                    const ComplexVector& phi_a) {
  require_bipartite(psi, "measure_update_vector");
  const Index da = psi.factor_dims()[0], db = psi.factor_dims()[1];
  if (phi_a.size() != da) {
    throw DimensionError("measure_update_vector: vector not on the A factor");
  }
  if (std::abs(phi_a.norm() - 1.0) > TOL_NORM) {
    throw InvariantViolation("unit_norm", "measurement vector is not normalized");
  }
  const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
  const ComplexVector on_b = s_ba.apply(phi_a);
  ComplexVector prepared(da * db);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b) prepared(a * db + b) = phi_a(a) * on_b(b);
  const double prob = prepared.squaredNorm();
  return {prob, PureState::unnormalized({da, db}, std::move(prepared))};
}

PureState reconstruct_from_resolution(
    const PureState& psi, const std::vector<ComplexVector>& basis) {
  require_bipartite(psi, "reconstruct_from_resolution");
  const Index da = psi.factor_dims()[0], db = psi.factor_dims()[1];
  ComplexMatrix resolution = ComplexMatrix::Zero(da, da);
  for (const auto& phi : basis) {
    if (phi.size() != da) {
      throw DimensionError("reconstruct_from_resolution: family not on the A factor");
    }
    resolution += phi * phi.adjoint();
  }
  if (!approx_equal(resolution, ComplexMatrix::Identity(da, da), 1e-10)) {
    throw InvariantViolation("resolution_of_identity",
                             "family does not resolve the identity on A");
  }
  const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
  ComplexVector sum = ComplexVector::Zero(da * db);
  for (const auto& phi : basis) {
    const ComplexVector on_b = s_ba.apply(phi);
    for (Index a = 0; a < da; ++a)
      for (Index b = 0; b < db; ++b) sum(a * db + b) += phi(a) * on_b(b);
  }
  return PureState({da, db}, std::move(sum));
}

Complex overlap_via_smaps(const PureState& phi, const PureState& psi) {
  require_bipartite(phi, "overlap_via_smaps");
  require_bipartite(psi, "overlap_via_smaps");
  if (phi.factor_dims() != psi.factor_dims()) {
    throw DimensionError("overlap_via_smaps: factor dims differ");
  }
  const ComplexMatrix on_a =
      compose_anti_anti(smap_from_vector(phi, SmapDirection::AB),
                        smap_from_vector(psi, SmapDirection::BA));
  return on_a.trace();
}

ReducedDensities reduced_densities_via_smaps(const PureState& psi) {
  require_bipartite(psi, "reduced_densities_via_smaps");
  const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
  const AntilinearMap s_ab = smap_from_vector(psi, SmapDirection::AB);
  ComplexMatrix rho_b = compose_anti_anti(s_ba, s_ab);
  ComplexMatrix rho_a = compose_anti_anti(s_ab, s_ba);
  const bool sub = !psi.normalized();
  return {DensityOperator(std::move(rho_a), sub),
          DensityOperator(std::move(rho_b), sub)};
}

std::size_t SchmidtDecomposition::rank(double rank_tol) const {
  std::size_t r = 0;
  for (double p : coefficients)
    if (p > rank_tol) ++r;
  return r;
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  const Index da = left_vectors.rows(), db = right_vectors.rows();
  ComplexVector psi = ComplexVector::Zero(da * db);
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const double w = std::sqrt(coefficients[j]);
    for (Index a = 0; a < da; ++a)
      for (Index b = 0; b < db; ++b)
        psi(a * db + b) +=
            w * left_vectors(a, static_cast<Index>(j)) *
            right_vectors(b, static_cast<Index>(j));
  }
  return psi;
}

SchmidtDecomposition schmidt(const PureState& psi) {
  require_bipartite(psi, "schmidt");
  Eigen::JacobiSVD<ComplexMatrix> svd(
      psi.coefficient_matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const auto& sigma = svd.singularValues();
  out.coefficients.resize(static_cast<std::size_t>(sigma.size()));
  for (Index j = 0; j < sigma.size(); ++j)
    out.coefficients[static_cast<std::size_t>(j)] = sigma(j) * sigma(j);
  out.left_vectors = svd.matrixU();
  // C = U Sigma V^dagger means psi = sum sigma_j u_j (x) conj(v_j).
  out.right_vectors = svd.matrixV().conjugate();
  return out;
}

JmapPair polar_jmaps(const PureState& psi) {
  require_bipartite(psi, "polar_jmaps");
  const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
  const AntilinearMap s_ab = smap_from_vector(psi, SmapDirection::AB);
  const ReducedDensities rho = reduced_densities_via_smaps(psi);
  AntilinearMap j_ba =
      compose_anti_linear(s_ba, pseudo_inverse_sqrt(rho.rho_a.matrix()));
  AntilinearMap j_ab =
      compose_anti_linear(s_ab, pseudo_inverse_sqrt(rho.rho_b.matrix()));
  return {std::move(j_ba), std::move(j_ab)};
}

const char* to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Product:
      return "product";
    case EntanglementClass::Partial:
      return "partial";
    case EntanglementClass::CompletelyEntangled:
      return "completely_entangled";
    case EntanglementClass::MaximallyEntangled:
      return "maximally_entangled";
  }
  return "unknown";
}

EntanglementClass entanglement_class(const PureState& psi, Factor respect_to) {
  require_bipartite(psi, "entanglement_class");
  const SchmidtDecomposition sd = schmidt(psi);
  const std::size_t rank = sd.rank();
  if (rank <= 1) return EntanglementClass::Product;

  const Index da = psi.factor_dims()[0], db = psi.factor_dims()[1];
  const Index d_ref = respect_to == Factor::A ? da : db;
  if (rank != static_cast<std::size_t>(d_ref)) {
    return EntanglementClass::Partial;
  }
  const double spread = sd.coefficients.front() - sd.coefficients[rank - 1];
  if (da == db && spread < TOL_EQ) {
    return EntanglementClass::MaximallyEntangled;
  }
  return EntanglementClass::CompletelyEntangled;
}

LocalTransformReport local_transform_smap(const PureState& psi,
                                          const ComplexMatrix& x_on_a,
                                          const ComplexMatrix& y_on_b) {
  require_bipartite(psi, "local_transform_smap");
  const Index da = psi.factor_dims()[0], db = psi.factor_dims()[1];
  if (x_on_a.rows() != da || x_on_a.cols() != da || y_on_b.rows() != db ||
      y_on_b.cols() != db) {
    throw DimensionError("local_transform_smap: operator shapes do not match factors");
  }
  const ComplexVector transformed = tensor(x_on_a, y_on_b) * psi.amplitudes();
  const PureState phi = PureState::unnormalized({da, db}, transformed);

  const AntilinearMap lhs_ba = smap_from_vector(phi, SmapDirection::BA);
  const AntilinearMap lhs_ab = smap_from_vector(phi, SmapDirection::AB);
  const AntilinearMap rhs_ba = compose_linear_anti(
      y_on_b, compose_anti_linear(smap_from_vector(psi, SmapDirection::BA),
                                  x_on_a.adjoint()));
  const AntilinearMap rhs_ab = compose_linear_anti(
      x_on_a, compose_anti_linear(smap_from_vector(psi, SmapDirection::AB),
                                  y_on_b.adjoint()));

  LocalTransformReport report;
  report.error_ba = max_abs_diff(lhs_ba.kmatrix(), rhs_ba.kmatrix());
  report.error_ab = max_abs_diff(lhs_ab.kmatrix(), rhs_ab.kmatrix());
  report.consistent = report.error_ba <= TOL_EQ && report.error_ab <= TOL_EQ;
  return report;
}

StabilizerResult stabilizer_check(const PureState& psi,
                                  const ComplexMatrix& u_a) {
  require_bipartite(psi, "stabilizer_check");
  if (entanglement_class(psi) != EntanglementClass::MaximallyEntangled) {
    throw InvariantViolation("maximally_entangled",
                             "stabilizer_check needs a maximally entangled state");
  }
  if (!is_unitary(u_a, 1e-10)) {
    throw InvariantViolation("unitary", "stabilizer_check: U_A is not unitary");
  }
  const JmapPair j = polar_jmaps(psi);
  // j^{BA} o U_A o j^{AB}: anti o linear o anti, hence linear.
  ComplexMatrix u_b =
      j.j_ba.kmatrix() * u_a.conjugate() * j.j_ab.kmatrix().conjugate();
  const ComplexVector moved = tensor(u_a, u_b) * psi.amplitudes();
  const double error =
      (moved - psi.amplitudes()).cwiseAbs().maxCoeff();
  return {std::move(u_b), error <= TOL_EQ, error};
}

}  // namespace eprkit
