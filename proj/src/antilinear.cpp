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

#include "eprkit/antilinear.hpp"

namespace eprkit {

AntilinearMap::AntilinearMap(ComplexMatrix kmatrix)
    : kmatrix_(std::move(kmatrix)) {
  if (kmatrix_.rows() < 1 || kmatrix_.cols() < 1) {
    throw DimensionError("AntilinearMap: kmatrix must be nonempty");
  }
  if (!kmatrix_.allFinite()) {
    throw InvariantViolation("finite", "AntilinearMap kmatrix has NaN/Inf entries");
  }
}

AntilinearMap AntilinearMap::conjugation(Index dim) {
  return AntilinearMap(ComplexMatrix::Identity(dim, dim));
}

ComplexVector AntilinearMap::apply(const ComplexVector& phi) const {
  if (phi.size() != src_dim()) {
    throw DimensionError("AntilinearMap::apply: vector length != src_dim");
  }
  return kmatrix_ * phi.conjugate();
}

AntilinearMap AntilinearMap::adjoint() const {
  return AntilinearMap(kmatrix_.transpose());
}

ComplexMatrix compose_anti_anti(const AntilinearMap& s2,
                                const AntilinearMap& s1) {
  if (s1.dst_dim() != s2.src_dim()) {
    throw DimensionError("compose_anti_anti: inner dimensions do not match");
  }
  return s2.kmatrix() * s1.kmatrix().conjugate();
}

AntilinearMap compose_anti_linear(const AntilinearMap& s,
                                  const ComplexMatrix& linear) {
  if (linear.rows() != s.src_dim()) {
    throw DimensionError("compose_anti_linear: inner dimensions do not match");
  }
  return AntilinearMap(s.kmatrix() * linear.conjugate());
}

AntilinearMap compose_linear_anti(const ComplexMatrix& linear,
                                  const AntilinearMap& s) {
  if (linear.cols() != s.dst_dim()) {
    throw DimensionError("compose_linear_anti: inner dimensions do not match");
  }
  return AntilinearMap(linear * s.kmatrix());
}

}  // namespace eprkit
