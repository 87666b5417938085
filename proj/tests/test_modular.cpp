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

#include <cmath>

#include <doctest.h>

#include "eprkit/modular.hpp"
#include "eprkit/states.hpp"
#include "oracles.hpp"

using namespace eprkit;

namespace {

ComplexVector basis_vec(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_SUITE("modular") {

TEST_CASE("twisted double of plain conjugations swaps the labels") {
  const AntilinearMap conj2 = AntilinearMap::conjugation(2);
  const TwistedAntilinearOperator op = twisted_tensor(conj2, conj2);
  // |01> |-> |10>
  const ComplexVector mapped = op.apply(
      oracles::naive_product(basis_vec(2, 0), basis_vec(2, 1)));
  const ComplexVector expected =
      oracles::naive_product(basis_vec(2, 1), basis_vec(2, 0));
  CHECK((mapped - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("twisted doubles act factorwise on product vectors") {
  Rng rng{Seed{501}};
  const AntilinearMap m_ab(rng.gaussian_matrix(2, 3));
  const AntilinearMap m_ba(rng.gaussian_matrix(3, 2));
  const TwistedAntilinearOperator op = twisted_tensor(m_ab, m_ba);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector a = rng.unit_vector(2);
    const ComplexVector b = rng.unit_vector(3);
    const ComplexVector lhs = op.apply(oracles::naive_product(a, b));
    const ComplexVector rhs =
        oracles::naive_product(m_ab.apply(b), m_ba.apply(a));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    // antilinearity on the composite space
    const Complex lambda = rng.gaussian_complex();
    const ComplexVector scaled =
        op.apply(ComplexVector(lambda * oracles::naive_product(a, b)));
    CHECK((scaled - std::conj(lambda) * lhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("the modular conjugation fixes its defining vector") {
  const PureState bell = bell_state(0);
  const TwistedAntilinearOperator j = modular_conjugation(bell);
  CHECK((j.apply(bell.amplitudes()) - bell.amplitudes())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  // J |01> = |10> for the Bell state (its Schmidt basis is computational)
  const ComplexVector mapped = j.apply(
      oracles::naive_product(basis_vec(2, 0), basis_vec(2, 1)));
  const ComplexVector expected =
      oracles::naive_product(basis_vec(2, 1), basis_vec(2, 0));
  CHECK((mapped - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("J squares to the support projector") {
  Rng rng{Seed{502}};
  for (int t = 0; t < 10; ++t) {
    const PureState psi = rng.pure_state({2, 2});
    const TwistedAntilinearOperator j = modular_conjugation(psi);
    const ComplexMatrix j_squared = j.kmatrix() * j.kmatrix().conjugate();
    const ReducedDensities red = reduced_densities_via_smaps(psi);
    const ComplexMatrix support =
        tensor(support_projector(red.rho_a.matrix()),
               support_projector(red.rho_b.matrix()));
    CHECK(max_abs_diff(j_squared, support) < 1e-9);
  }
}

TEST_CASE("J is antiunitary on the support") {
  Rng rng{Seed{503}};
  const PureState psi = rng.pure_state({3, 3});
  const TwistedAntilinearOperator j = modular_conjugation(psi);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector u = rng.unit_vector(9);
    const ComplexVector v = rng.unit_vector(9);
    const Complex lhs = oracles::naive_inner(j.apply(u), j.apply(v));
    const Complex rhs = oracles::naive_inner(v, u);
    CHECK(std::abs(lhs - rhs) < 1e-9);  // full-rank psi: support is everything
  }
}

TEST_CASE("Schmidt product basis action including the rank-deficient branch") {
  // rank-deficient state: p = (0.5, 0.5, 0) on a 3 x 3 system
  ComplexVector amps = ComplexVector::Zero(9);
  amps(0) = std::sqrt(0.5);
  amps(4) = std::sqrt(0.5);
  const PureState psi({3, 3}, amps);
  const TwistedAntilinearOperator j = modular_conjugation(psi);
  const SchmidtDecomposition sd = schmidt(psi);
  REQUIRE(sd.rank() == 2);
  const std::size_t m = sd.coefficients.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const ComplexVector in = oracles::naive_product(
          sd.left_vectors.col(static_cast<Index>(a)),
          sd.right_vectors.col(static_cast<Index>(b)));
      const ComplexVector out = j.apply(in);
      if (sd.coefficients[a] > RANK_TOL && sd.coefficients[b] > RANK_TOL) {
        const ComplexVector expected = oracles::naive_product(
            sd.left_vectors.col(static_cast<Index>(b)),
            sd.right_vectors.col(static_cast<Index>(a)));
        CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-9);
      } else {
        CHECK(out.cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("modular operator on fixtures") {
  CHECK(approx_equal(modular_operator(bell_state(0)),
                     ComplexMatrix::Identity(4, 4), 1e-12));

  ComplexVector amps = ComplexVector::Zero(4);
  amps(0) = std::sqrt(0.9);
  amps(3) = std::sqrt(0.1);
  const ComplexMatrix delta = modular_operator(PureState({2, 2}, amps));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 9.0;
  expected(2, 2) = 1.0 / 9.0;
  expected(3, 3) = 1.0;
  CHECK(max_abs_diff(delta, expected) < 1e-9);

  // product state: the B side contributes a rank-one pseudo-inverse
  Rng rng{Seed{504}};
  const ComplexVector a = rng.unit_vector(2);
  const ComplexVector b = rng.unit_vector(2);
  const PureState prod({2, 2}, oracles::naive_product(a, b));
  const ComplexMatrix dp = modular_operator(prod);
  CHECK(max_abs_diff(
            dp, tensor(ComplexMatrix(a * a.adjoint()),
                       ComplexMatrix(b * b.adjoint()))) < 1e-9);
}

TEST_CASE("S reduces to J when the modular operator is trivial") {
  const TwistedAntilinearOperator s = s_operator(bell_state(0));
  const TwistedAntilinearOperator j = modular_conjugation(bell_state(0));
  CHECK(max_abs_diff(s.kmatrix(), j.kmatrix()) < 1e-12);
}

TEST_CASE("S fixes its vector and squares to the support") {
  Rng rng{Seed{505}};
  for (int t = 0; t < 10; ++t) {
    const PureState psi = rng.pure_state({2, 2});
    if (schmidt(psi).rank() < 2) continue;
    const TwistedAntilinearOperator s = s_operator(psi);
    CHECK((s.apply(psi.amplitudes()) - psi.amplitudes())
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    const ComplexMatrix s_squared = s.kmatrix() * s.kmatrix().conjugate();
    CHECK(max_abs_diff(s_squared, ComplexMatrix::Identity(4, 4)) < 1e-8);
  }
}

TEST_CASE("operator identities connecting sqrt Delta, S and the doubles") {
  const DsReport bell_report = verify_ds_relations(bell_state(0));
  CHECK(bell_report.error_sqrt_delta < 1e-12);
  CHECK(bell_report.error_s_embedding < 1e-12);

  Rng rng{Seed{506}};
  for (Index d : {Index{2}, Index{3}}) {
    for (int t = 0; t < 10; ++t) {
      const PureState psi = rng.pure_state({d, d});
      if (schmidt(psi).rank() < static_cast<std::size_t>(d)) continue;
      const DsReport r = verify_ds_relations(psi);
      CHECK(r.error_sqrt_delta < 1e-9);
      CHECK(r.error_s_embedding < 1e-9);
      CHECK(r.consistent);
    }
  }
}

TEST_CASE("twisted doubles relate through the reduced square roots") {
  Rng rng{Seed{507}};
  const PureState psi = rng.pure_state({2, 3});
  const JmapPair jm = polar_jmaps(psi);
  const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
  const AntilinearMap s_ab = smap_from_vector(psi, SmapDirection::AB);
  const ReducedDensities red = reduced_densities_via_smaps(psi);
  const ComplexMatrix sqrt_a = matrix_sqrt(red.rho_a.matrix());
  const ComplexMatrix sqrt_b = matrix_sqrt(red.rho_b.matrix());
  const ComplexMatrix jj = twisted_tensor(jm.j_ab, jm.j_ba).kmatrix();
  CHECK(max_abs_diff(twisted_tensor(s_ab, s_ba).kmatrix(),
                     tensor(sqrt_a, sqrt_b) * jj) < 1e-9);
  CHECK(max_abs_diff(
            twisted_tensor(jm.j_ab, s_ba).kmatrix(),
            tensor(ComplexMatrix::Identity(2, 2), sqrt_b) * jj) < 1e-9);
  CHECK(max_abs_diff(
            twisted_tensor(s_ab, jm.j_ba).kmatrix(),
            tensor(sqrt_a, ComplexMatrix::Identity(3, 3)) * jj) < 1e-9);
}

TEST_CASE("mismatched factor connections are rejected") {
  Rng rng{Seed{508}};
  const AntilinearMap ok_ab(rng.gaussian_matrix(2, 3));
  const AntilinearMap bad(rng.gaussian_matrix(2, 3));
  CHECK_THROWS_AS(twisted_tensor(ok_ab, bad), DimensionError);
}

}  // TEST_SUITE
