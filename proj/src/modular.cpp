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

#include "eprkit/modular.hpp"

namespace eprkit {

TwistedAntilinearOperator::TwistedAntilinearOperator(Index dim_a, Index dim_b,
                                                     ComplexMatrix kmatrix)
    : dim_a_(dim_a), dim_b_(dim_b), kmatrix_(std::move(kmatrix)) {
  const Index d = dim_a_ * dim_b_;
  if (kmatrix_.rows() != d || kmatrix_.cols() != d) {
    throw DimensionError("TwistedAntilinearOperator: kmatrix must be square on A(x)B");
  }
}

ComplexVector TwistedAntilinearOperator::apply(
    const ComplexVector& composite) const {
  if (composite.size() != kmatrix_.rows()) {
    throw DimensionError("TwistedAntilinearOperator::apply: vector length mismatch");
  }
  return kmatrix_ * composite.conjugate();
}

TwistedAntilinearOperator twisted_tensor(const AntilinearMap& m_ab,
                                         const AntilinearMap& m_ba) {
  if (m_ab.src_dim() != m_ba.dst_dim() || m_ab.dst_dim() != m_ba.src_dim()) {
    throw DimensionError("twisted_tensor: maps do not connect the two factors");
  }
  const Index da = m_ab.dst_dim(), db = m_ba.dst_dim();
  // On conj(phi_A (x) phi_B) the composite kmatrix must produce
  // (K_ab conj phi_B) (x) (K_ba conj phi_A): the column factors cross over.
  ComplexMatrix k(da * db, da * db);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b)
      for (Index ap = 0; ap < da; ++ap)
        for (Index bp = 0; bp < db; ++bp)
          k(a * db + b, ap * db + bp) =
              m_ab.kmatrix()(a, bp) * m_ba.kmatrix()(b, ap);
  return TwistedAntilinearOperator(da, db, std::move(k));
}

TwistedAntilinearOperator modular_conjugation(const PureState& psi) {
  const JmapPair j = polar_jmaps(psi);
  return twisted_tensor(j.j_ab, j.j_ba);
}

ComplexMatrix modular_operator(const PureState& psi) {
  const ReducedDensities rho = reduced_densities_via_smaps(psi);
  return tensor(rho.rho_a.matrix(), pseudo_inverse(rho.rho_b.matrix()));
}

TwistedAntilinearOperator s_operator(const PureState& psi) {
  const TwistedAntilinearOperator j = modular_conjugation(psi);
  const ComplexMatrix sqrt_delta = matrix_sqrt(modular_operator(psi));
  // antilinear after linear: K_S = K_J * conj(sqrt Delta)
  return TwistedAntilinearOperator(
      j.dim_a(), j.dim_b(), j.kmatrix() * sqrt_delta.conjugate());
}

DsReport verify_ds_relations(const PureState& psi) {
  const JmapPair j = polar_jmaps(psi);
  const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
  const AntilinearMap s_ab = smap_from_vector(psi, SmapDirection::AB);
  const ReducedDensities rho = reduced_densities_via_smaps(psi);

  const ComplexMatrix sqrt_delta = matrix_sqrt(modular_operator(psi));
  const ComplexMatrix j_ts = twisted_tensor(j.j_ab, s_ba).kmatrix();
  const ComplexMatrix s_tj = twisted_tensor(s_ab, j.j_ba).kmatrix();

  // sqrt(Delta) (j ~x s): linear after antilinear, kmatrix multiplies left.
  const double err1 = max_abs_diff(sqrt_delta * j_ts, s_tj);

  // S (1 (x) sqrt rho_B) = j ~x s: antilinear after linear, conjugated
  // right factor. (The mirrored form J (1 (x) sqrt rho_B) = s ~x j is the
  // same statement conjugated by sqrt(Delta).)
  const ComplexMatrix embed =
      tensor(ComplexMatrix::Identity(psi.factor_dims()[0],
                                     psi.factor_dims()[0]),
             matrix_sqrt(rho.rho_b.matrix()));
  const ComplexMatrix lhs2 = s_operator(psi).kmatrix() * embed.conjugate();
  const double err2 = max_abs_diff(lhs2, j_ts);

  return {err1, err2, err1 <= 1e-9 && err2 <= 1e-9};
}

}  // namespace eprkit
