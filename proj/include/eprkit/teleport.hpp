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

#include "eprkit/channel.hpp"
#include "eprkit/core.hpp"
#include "eprkit/smap.hpp"

namespace eprkit {

/// Complete orthonormal measurement basis of a bipartite space, indexing
/// the outcomes of the joint measurement that triggers teleportation.
class MeasurementBasis {
 public:
  MeasurementBasis(Index dim_a, Index dim_b, std::vector<PureState> vectors);

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index dim() const { return dim_a_ * dim_b_; }
  std::size_t size() const { return vectors_.size(); }
  const PureState& vector(std::size_t i) const;
  const std::vector<PureState>& vectors() const { return vectors_; }

 private:
  Index dim_a_;
  Index dim_b_;
  std::vector<PureState> vectors_;
};

/// The linear transporter of outcome psi_i: the composition of the
/// ancilla's CB s-map with the basis vector's BA s-map, a matrix C x A.
ComplexMatrix teleport_map(const PureState& psi_bc, const PureState& psi_ab);

struct TeleportOutcome {
  std::size_t index;
  double probability;    // squared norm of the output vector
  ComplexMatrix map;     // the transporter t_i
  ComplexVector output;  // t_i phi_A, unnormalized vector on C
};

/// Outcome i of measuring the AB part of phi_A (x) psi_BC in `basis`.
/// The result is cross-checked against the direct tripartite projection;
/// disagreement beyond 1e-10 raises InvariantViolation.
TeleportOutcome teleport_outcome(const ComplexVector& phi_a,
                                 const PureState& psi_bc,
                                 const MeasurementBasis& basis,
                                 std::size_t index);

struct TeleportQuality {
  double transporter_trace_norm;  // ||t||_1
  double sqrt_fidelity;           // sqrt F(rho_i_B, rho_B)
};

/// The two sides of the trace-norm/fidelity identity for one outcome;
/// they agree within 1e-8 whenever the reduced operators come from the
/// basis vector and the ancilla as documented.
TeleportQuality teleport_quality(const ComplexMatrix& transporter,
                                 const DensityOperator& rho_i_b,
                                 const DensityOperator& rho_b);

/// Density transport through one outcome channel: t omega t^dagger
/// (subnormalized by the outcome weight).
ComplexMatrix teleport_density(const DensityOperator& omega_a,
                               const ComplexMatrix& transporter);

/// Outcome-i teleportation with an arbitrary (possibly mixed) ancilla on
/// B(x)C: the CB channel map of the ancilla applied to the antilinear
/// conjugation of omega by the outcome's s-map. Coincides with
/// teleport_density when the ancilla is pure.
ComplexMatrix teleport_mixed_ancilla(const DensityOperator& omega_a,
                                     const DensityOperator& rho_bc,
                                     Index dim_b, Index dim_c,
                                     const PureState& psi_ab);

struct ProtocolOutcome {
  std::size_t index;
  double probability;
  ComplexMatrix output;             // unnormalized operator on C
  ComplexMatrix corrected_output;   // after the per-outcome unitary, if any
  double fidelity_to_input;         // NaN when undefined (dim mismatch or p ~ 0)
};

struct ProtocolReport {
  std::vector<ProtocolOutcome> outcomes;
  double total_probability;
  double average_fidelity;  // probability-weighted, over defined outcomes
};

/// Exhaustive enumeration of the teleportation outcomes for an input state
/// on A, an ancilla density operator on B(x)C and a complete AB basis.
/// Optional per-outcome correction unitaries on C are applied before the
/// fidelity against the input is evaluated.
ProtocolReport run_protocol(
    const DensityOperator& omega_a, const DensityOperator& rho_bc,
    Index dim_b, Index dim_c, const MeasurementBasis& basis,
    const std::optional<std::vector<ComplexMatrix>>& corrections =
        std::nullopt);

/// Correction unitaries for the qubit Bell-ancilla/Bell-basis protocol,
/// derived from the transporters themselves (each t_i is unitary/2 there).
std::vector<ComplexMatrix> derive_bell_corrections();

}  // namespace eprkit
