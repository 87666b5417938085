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

#include <doctest.h>

#include "eprkit/antilinear.hpp"
#include "eprkit/smap.hpp"
#include "eprkit/states.hpp"
#include "oracles.hpp"

using namespace eprkit;

TEST_SUITE("antilinear") {

TEST_CASE("plain conjugation") {
  const AntilinearMap conj = AntilinearMap::conjugation(2);
  ComplexVector phi(2);
  phi << Complex(1.0, 0.0), Complex(0.0, 1.0);
  const ComplexVector mapped = conj.apply(phi);
  CHECK(mapped(0) == Complex(1.0, 0.0));
  CHECK(mapped(1) == Complex(0.0, -1.0));
}

TEST_CASE("antilinearity law") {
  Rng rng{Seed{101}};
  const AntilinearMap s(rng.gaussian_matrix(3, 2));
  for (int t = 0; t < 20; ++t) {
    const ComplexVector phi = rng.unit_vector(2);
    const Complex lambda = rng.gaussian_complex();
    const ComplexVector lhs = s.apply(lambda * phi);
    const ComplexVector rhs = std::conj(lambda) * s.apply(phi);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("adjoint is an involution and a transpose") {
  Rng rng{Seed{102}};
  const AntilinearMap s(rng.gaussian_matrix(3, 2));
  CHECK(max_abs_diff(s.adjoint().adjoint().kmatrix(), s.kmatrix()) == 0.0);

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = Complex(0.0, 1.0);
  const AntilinearMap d(diag);
  CHECK(max_abs_diff(d.adjoint().kmatrix(), diag) == 0.0);
}

TEST_CASE("adjoint pairing holds on random triples") {
  Rng rng{Seed{103}};
  for (int t = 0; t < 100; ++t) {
    const AntilinearMap s(rng.gaussian_matrix(3, 2));
    const ComplexVector phi = rng.unit_vector(2);
    const ComplexVector chi = rng.unit_vector(3);
    const Complex lhs = oracles::naive_inner(chi, s.apply(phi));
    const Complex rhs = oracles::naive_inner(phi, s.adjoint().apply(chi));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("composition of two antilinear maps is linear and pointwise exact") {
  Rng rng{Seed{104}};
  const AntilinearMap s1(rng.gaussian_matrix(3, 2));
  const AntilinearMap s2(rng.gaussian_matrix(4, 3));
  const ComplexMatrix lin = compose_anti_anti(s2, s1);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector phi = rng.unit_vector(2);
    CHECK((lin * phi - s2.apply(s1.apply(phi))).cwiseAbs().maxCoeff() <
          1e-12);
    const Complex lambda = rng.gaussian_complex();
    CHECK((lin * (lambda * phi) - lambda * (lin * phi)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  // conjugation twice is the identity
  const AntilinearMap c = AntilinearMap::conjugation(3);
  CHECK(approx_equal(compose_anti_anti(c, c), ComplexMatrix::Identity(3, 3),
                     0.0));
}

TEST_CASE("Bell s-map composed with its adjoint is half the identity") {
  const AntilinearMap s = smap_from_vector(bell_state(0), SmapDirection::BA);
  CHECK(approx_equal(compose_anti_anti(s, s.adjoint()),
                     0.5 * ComplexMatrix::Identity(2, 2), 1e-15));
}

TEST_CASE("mixed compositions place the conjugation correctly") {
  Rng rng{Seed{105}};
  const AntilinearMap s(rng.gaussian_matrix(3, 2));
  const ComplexMatrix l_front = rng.gaussian_matrix(4, 3);
  const ComplexMatrix l_back = rng.gaussian_matrix(2, 2);
  const AntilinearMap front = compose_linear_anti(l_front, s);
  const AntilinearMap back = compose_anti_linear(s, l_back);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector phi = rng.unit_vector(2);
    CHECK((front.apply(phi) - l_front * s.apply(phi)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((back.apply(phi) - s.apply(l_back * phi)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  // identity factors change nothing
  const AntilinearMap same_front =
      compose_linear_anti(ComplexMatrix::Identity(3, 3), s);
  const AntilinearMap same_back =
      compose_anti_linear(s, ComplexMatrix::Identity(2, 2));
  CHECK(max_abs_diff(same_front.kmatrix(), s.kmatrix()) == 0.0);
  CHECK(max_abs_diff(same_back.kmatrix(), s.kmatrix()) == 0.0);
}

TEST_CASE("adjoint reverses compositions with linear maps") {
  Rng rng{Seed{106}};
  for (int t = 0; t < 20; ++t) {
    const AntilinearMap s(rng.gaussian_matrix(3, 2));
    const ComplexMatrix l = rng.gaussian_matrix(3, 3);
    const AntilinearMap lhs = compose_linear_anti(l, s).adjoint();
    const AntilinearMap rhs = compose_anti_linear(s.adjoint(), l.adjoint());
    const ComplexVector chi = rng.unit_vector(3);
    CHECK((lhs.apply(chi) - rhs.apply(chi)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  Rng rng{Seed{107}};
  const AntilinearMap s(rng.gaussian_matrix(3, 2));
  CHECK_THROWS_AS(s.apply(rng.unit_vector(3)), DimensionError);
  CHECK_THROWS_AS(compose_anti_anti(s, s), DimensionError);
  CHECK_THROWS_AS(compose_anti_linear(s, rng.gaussian_matrix(3, 3)),
                  DimensionError);
  CHECK_THROWS_AS(compose_linear_anti(rng.gaussian_matrix(2, 2), s),
                  DimensionError);
}

TEST_CASE("Hilbert-Schmidt norm tracks the generating vector") {
  Rng rng{Seed{108}};
  for (int t = 0; t < 20; ++t) {
    const PureState psi = rng.pure_state({2, 3});
    CHECK(std::abs(smap_from_vector(psi, SmapDirection::BA).hs_norm() -
                   psi.norm()) < 1e-12);
  }
}

}  // TEST_SUITE
