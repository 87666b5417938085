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

#include <cstdint>
#include <random>
#include <vector>

#include "eprkit/core.hpp"
#include "eprkit/teleport.hpp"

namespace eprkit {

/// 64-bit generator seed; identical seeds give bit-identical streams.
struct Seed {
  std::uint64_t value = 0;
};

/// Deterministic random source for fixtures. The stream is fully pinned:
/// std::mt19937_64 raw output, uniform doubles built as (x >> 11) * 2^-53,
/// Gaussians via Box-Muller (cosine branch, two uniforms per draw). No
/// std::*_distribution is involved, so the sequence does not depend on the
/// standard library implementation.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  /// Uniform in [0, 1).
  double uniform();

  /// Standard normal.
  double gaussian();

  /// Independent N(0, 1) real and imaginary parts.
  Complex gaussian_complex();

  ComplexMatrix gaussian_matrix(Index rows, Index cols);

  /// Haar-distributed unitary: QR of a Gaussian matrix with the R diagonal
  /// phases folded into Q.
  ComplexMatrix haar_unitary(Index dim);

  /// Uniform unit vector.
  ComplexVector unit_vector(Index dim);

  PureState pure_state(std::vector<Index> factor_dims);

  /// PSD, unit trace, with exactly `rank` nonzero eigenvalues.
  DensityOperator density(Index dim, Index rank);

  /// Random orthonormal measurement basis of the bipartite space.
  MeasurementBasis measurement_basis(Index dim_a, Index dim_b);

 private:
  std::mt19937_64 engine_;
};

/// The four maximally entangled two-qubit states, in the fixed order
/// (|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2, (|01>+|10>)/sqrt2,
/// (|01>-|10>)/sqrt2.
PureState bell_state(int k);

/// All four Bell states as a complete measurement basis of C^2 (x) C^2.
MeasurementBasis bell_basis();

/// p |bell_0><bell_0| + (1-p) I/4 on a 2 (x) 2 system, p in [0, 1].
DensityOperator werner(double p);

ComplexMatrix haar_unitary(Index dim, Seed seed);
PureState random_pure(std::vector<Index> factor_dims, Seed seed);
DensityOperator random_density(Index dim, Index rank, Seed seed);

}  // namespace eprkit
