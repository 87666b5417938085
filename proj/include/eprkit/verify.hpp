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
#include <string>
#include <vector>

#include "eprkit/core.hpp"

namespace eprkit {

struct CheckResult {
  std::string name;
  bool passed;
  double max_error;   // worst deviation observed
  double tolerance;   // bound it was held against
};

struct VerifyOptions {
  Index dim_a = 2;
  Index dim_b = 2;
  int trials = 100;
  std::uint64_t seed = 0;
};

/// Every identity the library is built on, evaluated on seeded random
/// instances: measurement-update and s-map identities, decomposition
/// independence, polar decompositions, channel factorization and duality,
/// teleportation composition and the trace-norm/fidelity equality, local
/// stabilizers, modular-operator relations, Choi positivity, generator
/// reproducibility. Deterministic given the seed.
std::vector<CheckResult> verify_all(const VerifyOptions& options);

/// True iff every check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace eprkit
