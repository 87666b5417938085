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

#include "eprkit/teleport.hpp"

#include <cmath>
#include <limits>

#include "eprkit/states.hpp"

namespace eprkit {

MeasurementBasis::MeasurementBasis(Index dim_a, Index dim_b,
                                   std::vector<PureState> vectors)
    : dim_a_(dim_a), dim_b_(dim_b), vectors_(std::move(vectors)) {
  const Index d = dim_a_ * dim_b_;
  if (vectors_.size() != static_cast<std::size_t>(d)) {
    throw DimensionError("MeasurementBasis: need dim_a * dim_b vectors");
  }
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    const auto& v = vectors_[i];
    if (v.arity() != 2 || v.factor_dims()[0] != dim_a_ ||
        v.factor_dims()[1] != dim_b_) {
      throw DimensionError("MeasurementBasis: vector factor dims mismatch");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ip = vectors_[j].amplitudes().dot(v.amplitudes());
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > 1e-10) {
        throw InvariantViolation("orthonormal",
                                 "measurement basis vectors are not orthonormal");
      }
    }
    completeness += v.projector();
  }
  if (!approx_equal(completeness, ComplexMatrix::Identity(d, d), 1e-9)) {
    throw InvariantViolation("complete", "measurement basis does not resolve the identity");
  }
}

const PureState& MeasurementBasis::vector(std::size_t i) const {
  if (i >= vectors_.size()) {
    throw ValueError("measurement basis index out of range");
  }
  return vectors_[i];
}

ComplexMatrix teleport_map(const PureState& psi_bc, const PureState& psi_ab) {
  if (psi_bc.arity() != 2 || psi_ab.arity() != 2) {
    throw DimensionError("teleport_map: both states must be bipartite");
  }
  if (psi_bc.factor_dims()[0] != psi_ab.factor_dims()[1]) {
    throw DimensionError("teleport_map: shared B dimension differs");
  }
  // On (B, C) the first-to-second map is the CB one.
  const AntilinearMap s_cb = smap_from_vector(psi_bc, SmapDirection::BA);
  const AntilinearMap s_ba = smap_from_vector(psi_ab, SmapDirection::BA);
  return compose_anti_anti(s_cb, s_ba);
}

TeleportOutcome teleport_outcome(const ComplexVector& phi_a,
                                 const PureState& psi_bc,
                                 const MeasurementBasis& basis,
                                 std::size_t index) {
  const PureState& psi_i = basis.vector(index);
  const Index da = psi_i.factor_dims()[0];
  const Index db = psi_i.factor_dims()[1];
  const Index dc = psi_bc.factor_dims()[1];
  if (phi_a.size() != da) {
    throw DimensionError("teleport_outcome: input vector not on the A factor");
  }
  if (psi_bc.factor_dims()[0] != db) {
    throw DimensionError("teleport_outcome: ancilla B dimension mismatch");
  }

  ComplexMatrix transporter = teleport_map(psi_bc, psi_i);
  ComplexVector output = transporter * phi_a;

  // Independent route: project phi_A (x) psi_BC onto psi_i in A(x)B(x)C.
  ComplexVector tripartite(da * db * dc);
  for (Index a = 0; a < da; ++a)
    for (Index bc = 0; bc < db * dc; ++bc)
      tripartite(a * db * dc + bc) = phi_a(a) * psi_bc.amplitudes()(bc);
  ComplexVector projected_c = ComplexVector::Zero(dc);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b) {
      const Complex weight = std::conj(psi_i.amplitudes()(a * db + b));
      for (Index c = 0; c < dc; ++c)
        projected_c(c) += weight * tripartite((a * db + b) * dc + c);
    }
  if ((projected_c - output).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvariantViolation("outcome_projection",
                             "transporter and tripartite projection disagree");
  }

  TeleportOutcome out;
  out.index = index;
  out.probability = output.squaredNorm();
  out.map = std::move(transporter);
  out.output = std::move(output);
  return out;
}

TeleportQuality teleport_quality(const ComplexMatrix& transporter,
                                 const DensityOperator& rho_i_b,
                                 const DensityOperator& rho_b) {
  if (rho_i_b.dim() != rho_b.dim()) {
    throw DimensionError("teleport_quality: reduced operators have different dims");
  }
  return {trace_norm(transporter),
          std::sqrt(fidelity(rho_i_b, rho_b))};
}

ComplexMatrix teleport_density(const DensityOperator& omega_a,
                               const ComplexMatrix& transporter) {
  if (transporter.cols() != omega_a.dim()) {
    throw DimensionError("teleport_density: transporter does not accept the input");
  }
  return transporter * omega_a.matrix() * transporter.adjoint();
}

ComplexMatrix teleport_mixed_ancilla(const DensityOperator& omega_a,
                                     const DensityOperator& rho_bc,
                                     Index dim_b, Index dim_c,
                                     const PureState& psi_ab) {
  if (psi_ab.arity() != 2 || psi_ab.factor_dims()[1] != dim_b) {
    throw DimensionError("teleport_mixed_ancilla: basis vector B dimension mismatch");
  }
  if (psi_ab.factor_dims()[0] != omega_a.dim()) {
    throw DimensionError("teleport_mixed_ancilla: input not on the A factor");
  }
  const AntilinearMap s_ba = smap_from_vector(psi_ab, SmapDirection::BA);
  // s^{BA} omega s^{AB}: antilinear conjugation, a matrix on B.
  const ComplexMatrix on_b = s_ba.kmatrix() * omega_a.matrix().conjugate() *
                             s_ba.kmatrix().adjoint();
  const ChannelMap ancilla_channel =
      channel_from_density(rho_bc, dim_b, dim_c);
  return apply_channel(ancilla_channel, on_b);
}

ProtocolReport run_protocol(
    const DensityOperator& omega_a, const DensityOperator& rho_bc,
    Index dim_b, Index dim_c, const MeasurementBasis& basis,
    const std::optional<std::vector<ComplexMatrix>>& corrections) {
  if (basis.dim_a() != omega_a.dim() || basis.dim_b() != dim_b) {
    throw DimensionError("run_protocol: basis factor dims mismatch");
  }
  if (corrections) {
    if (corrections->size() != basis.size()) {
      throw DimensionError("run_protocol: need one correction per outcome");
    }
    for (const auto& u : *corrections) {
      if (u.rows() != dim_c || u.cols() != dim_c || !is_unitary(u, 1e-10)) {
        throw InvariantViolation("unitary", "correction operator is not unitary on C");
      }
    }
  }

  const ChannelMap ancilla_channel =
      channel_from_density(rho_bc, dim_b, dim_c);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  ProtocolReport report;
  report.total_probability = 0.0;
  double fidelity_mass = 0.0, fidelity_acc = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const AntilinearMap s_ba =
        smap_from_vector(basis.vector(i), SmapDirection::BA);
    const ComplexMatrix on_b = s_ba.kmatrix() *
                               omega_a.matrix().conjugate() *
                               s_ba.kmatrix().adjoint();
    ComplexMatrix raw = apply_channel(ancilla_channel, on_b);
    raw = 0.5 * (raw + raw.adjoint().eval());

    ProtocolOutcome outcome;
    outcome.index = i;
    outcome.probability = raw.trace().real();
    outcome.corrected_output =
        corrections ? ComplexMatrix((*corrections)[i] * raw *
                                    (*corrections)[i].adjoint())
                    : raw;
    outcome.output = std::move(raw);
    outcome.fidelity_to_input = nan;
    if (dim_c == omega_a.dim() && outcome.probability > 1e-12) {
      const DensityOperator normalized(
          ComplexMatrix(outcome.corrected_output / outcome.probability));
      outcome.fidelity_to_input = fidelity(normalized, omega_a);
      fidelity_mass += outcome.probability;
      fidelity_acc += outcome.probability * outcome.fidelity_to_input;
    }
    report.total_probability += outcome.probability;
    report.outcomes.push_back(std::move(outcome));
  }
  report.average_fidelity =
      fidelity_mass > 0.0 ? fidelity_acc / fidelity_mass : nan;
  return report;
}

std::vector<ComplexMatrix> derive_bell_corrections() {
  const PureState ancilla = bell_state(0);
  std::vector<ComplexMatrix> corrections;
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix t = teleport_map(ancilla, bell_state(k));
    ComplexMatrix u = 2.0 * t;  // the Bell transporters are unitary/2
    if (!is_unitary(u, 1e-10)) {
      throw InvariantViolation("unitary", "Bell transporter is not proportional to a unitary");
    }
    corrections.push_back(u.adjoint());
  }
  return corrections;
}

}  // namespace eprkit
