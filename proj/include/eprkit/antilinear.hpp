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

#include "eprkit/core.hpp"

namespace eprkit {

/// Antilinear map between finite-dimensional spaces, stored as the matrix K
/// of phi |-> K * conj(phi) in fixed bases. Storing the map composed with
/// basis conjugation keeps every sign rule local: the Hermitian adjoint is
/// the plain transpose of K, no conjugation.
///
/// An antilinear map cannot be tensored with a linear one (the sign of the
/// imaginary unit would be unfixable), so no such operation exists here;
/// product-space antilinear operators are built only by the twisted double
/// construction in modular.hpp.
class AntilinearMap {
 public:
  /// kmatrix is dst_dim x src_dim.
  explicit AntilinearMap(ComplexMatrix kmatrix);

  /// Plain componentwise conjugation on a d-dimensional space (K = I).
  static AntilinearMap conjugation(Index dim);

  Index src_dim() const { return kmatrix_.cols(); }
  Index dst_dim() const { return kmatrix_.rows(); }
  const ComplexMatrix& kmatrix() const { return kmatrix_; }

  /// kmatrix * conj(phi).
  ComplexVector apply(const ComplexVector& phi) const;

  /// Hermitian adjoint: <chi | s phi> = <phi | adjoint(s) chi>.
  AntilinearMap adjoint() const;

  /// Hilbert-Schmidt (Frobenius) norm.
  double hs_norm() const { return kmatrix_.norm(); }

 private:
  ComplexMatrix kmatrix_;
};

/// Composition of two antilinear maps is linear: returns the matrix of
/// s2 o s1, namely s2.kmatrix * conj(s1.kmatrix).
ComplexMatrix compose_anti_anti(const AntilinearMap& s2,
                                const AntilinearMap& s1);

/// s o L (apply the linear map first): kmatrix = s.kmatrix * conj(L).
AntilinearMap compose_anti_linear(const AntilinearMap& s,
                                  const ComplexMatrix& linear);

/// L o s (apply the antilinear map first): kmatrix = L * s.kmatrix.
AntilinearMap compose_linear_anti(const ComplexMatrix& linear,
                                  const AntilinearMap& s);

}  // namespace eprkit
