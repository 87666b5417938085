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

#include "eprkit/verify.hpp"

#include <algorithm>
#include <cmath>

#include "eprkit/antilinear.hpp"
#include "eprkit/channel.hpp"
#include "eprkit/modular.hpp"
#include "eprkit/smap.hpp"
#include "eprkit/states.hpp"
#include "eprkit/teleport.hpp"

namespace eprkit {

namespace {

class Suite {
 public:
  Suite(const VerifyOptions& options) : options_(options) {}

  void record(const std::string& name, double err, double tol) {
    results_.push_back({name, err <= tol, err, tol});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

  const VerifyOptions& opt() const { return options_; }

 private:
  VerifyOptions options_;
  std::vector<CheckResult> results_;
};

ComplexVector embed_product(const ComplexVector& left,
                            const ComplexVector& right) {
  ComplexVector out(left.size() * right.size());
  for (Index a = 0; a < left.size(); ++a)
    for (Index b = 0; b < right.size(); ++b)
      out(a * right.size() + b) = left(a) * right(b);
  return out;
}

// ---------------------------------------------------------------------
// core
void check_core(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  double err_trace = 0.0, err_assoc = 0.0, err_norm = 0.0, err_fid = 0.0;
  for (int t = 0; t < std::max(1, o.trials / 10); ++t) {
    const DensityOperator rho = rng.density(o.dim_a * o.dim_b, o.dim_a * o.dim_b);
    for (std::size_t keep = 0; keep < 2; ++keep) {
      const ComplexMatrix red =
          partial_trace(rho.matrix(), {o.dim_a, o.dim_b}, keep);
      err_trace = std::max(
          err_trace, std::abs(red.trace().real() - rho.trace()));
    }

    const ComplexMatrix a = rng.gaussian_matrix(2, 2);
    const ComplexMatrix b = rng.gaussian_matrix(o.dim_b, o.dim_b);
    const ComplexMatrix c = rng.gaussian_matrix(3, 2);
    err_assoc = std::max(err_assoc, max_abs_diff(tensor(tensor(a, b), c),
                                                 tensor(a, tensor(b, c))));

    const ComplexMatrix m1 = rng.gaussian_matrix(o.dim_a, o.dim_b);
    const ComplexMatrix m2 = rng.gaussian_matrix(o.dim_a, o.dim_b);
    const double triangle =
        trace_norm(m1 + m2) - trace_norm(m1) - trace_norm(m2);
    const Complex lambda = rng.gaussian_complex();
    const double homogeneity = std::abs(trace_norm(lambda * m1) -
                                        std::abs(lambda) * trace_norm(m1));
    err_norm = std::max({err_norm, triangle, homogeneity});

    const DensityOperator r1 = rng.density(o.dim_a, o.dim_a);
    const DensityOperator r2 = rng.density(o.dim_a, o.dim_a);
    err_fid = std::max(err_fid,
                       std::abs(fidelity(r1, r2) - fidelity(r2, r1)));
  }
  s.record("core.partial_trace_preserves_trace", err_trace, 1e-10);
  s.record("core.tensor_associativity", err_assoc, 1e-12);
  s.record("core.trace_norm_is_norm", err_norm, 1e-9);
  s.record("core.fidelity_symmetry", err_fid, 1e-9);
}

// ---------------------------------------------------------------------
// antilinear
void check_antilinear(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  double err_adjoint = 0.0, err_linear = 0.0, err_hs = 0.0, err_pair = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const AntilinearMap sm(rng.gaussian_matrix(o.dim_b, o.dim_a));
    const ComplexMatrix linear = rng.gaussian_matrix(o.dim_b, o.dim_b);
    const ComplexVector phi = rng.unit_vector(o.dim_a);
    const ComplexVector chi = rng.unit_vector(o.dim_b);

    // <chi | s phi> = <phi | s* chi>
    const Complex lhs = chi.dot(sm.apply(phi));
    const Complex rhs = phi.dot(sm.adjoint().apply(chi));
    err_pair = std::max(err_pair, std::abs(lhs - rhs));

    // adjoint of L o s equals s* o L*
    const AntilinearMap composed = compose_linear_anti(linear, sm);
    const AntilinearMap via_parts =
        compose_anti_linear(sm.adjoint(), linear.adjoint());
    err_adjoint = std::max(
        err_adjoint,
        (composed.adjoint().apply(chi) - via_parts.apply(chi))
            .cwiseAbs()
            .maxCoeff());

    // anti o anti is linear
    const AntilinearMap back(rng.gaussian_matrix(o.dim_a, o.dim_b));
    const ComplexMatrix lin = compose_anti_anti(back, sm);
    const Complex lambda = rng.gaussian_complex();
    err_linear = std::max(err_linear,
                          ((lin * (lambda * phi)) - lambda * (lin * phi))
                              .cwiseAbs()
                              .maxCoeff());

    // Hilbert-Schmidt norm of an s-map equals the norm of its vector
    const PureState psi = rng.pure_state({o.dim_a, o.dim_b});
    err_hs = std::max(
        err_hs,
        std::abs(smap_from_vector(psi, SmapDirection::BA).hs_norm() -
                 psi.norm()));
  }
  s.record("antilinear.adjoint_pairing", err_pair, 1e-12);
  s.record("antilinear.adjoint_reverses_composition", err_adjoint, 1e-10);
  s.record("antilinear.double_composition_linear", err_linear, 1e-10);
  s.record("antilinear.hs_norm_matches_vector", err_hs, 1e-12);
}

// ---------------------------------------------------------------------
// smap
void check_smap(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  double err_defining = 0.0, err_decomp = 0.0, err_overlap = 0.0;
  double err_reduced = 0.0, err_polar = 0.0, err_support = 0.0;
  double err_schmidt = 0.0, err_unitary_j = 0.0, err_roundtrip = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const PureState psi = rng.pure_state({o.dim_a, o.dim_b});
    const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);

    // prepared vector identity
    const ComplexVector phi_a = rng.unit_vector(o.dim_a);
    const ComplexMatrix projector =
        tensor(phi_a * phi_a.adjoint(),
               ComplexMatrix::Identity(o.dim_b, o.dim_b));
    const ComplexVector lhs = projector * psi.amplitudes();
    const ComplexVector rhs = embed_product(phi_a, s_ba.apply(phi_a));
    err_defining =
        std::max(err_defining, (lhs - rhs).cwiseAbs().maxCoeff());

    // raw amplitudes vs Schmidt-form sum give the same map
    const SchmidtDecomposition sd = schmidt(psi);
    ComplexMatrix schmidt_k =
        ComplexMatrix::Zero(o.dim_b, o.dim_a);
    for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
      schmidt_k += std::sqrt(sd.coefficients[j]) *
                   sd.right_vectors.col(static_cast<Index>(j)) *
                   sd.left_vectors.col(static_cast<Index>(j)).transpose();
    }
    err_decomp = std::max(err_decomp,
                          max_abs_diff(schmidt_k, s_ba.kmatrix()));

    // both overlap trace formulas against the direct inner product
    const PureState phi = rng.pure_state({o.dim_a, o.dim_b});
    const Complex direct = psi.amplitudes().dot(phi.amplitudes());
    err_overlap = std::max(err_overlap,
                           std::abs(overlap_via_smaps(phi, psi) - direct));
    const Complex via_b =
        compose_anti_anti(smap_from_vector(phi, SmapDirection::BA),
                          smap_from_vector(psi, SmapDirection::AB))
            .trace();
    err_overlap = std::max(err_overlap, std::abs(via_b - direct));

    // reduced densities through composition vs partial traces
    const ReducedDensities red = reduced_densities_via_smaps(psi);
    err_reduced = std::max(
        err_reduced,
        max_abs_diff(red.rho_a.matrix(),
                     partial_trace(psi.projector(), {o.dim_a, o.dim_b}, 0)));
    err_reduced = std::max(
        err_reduced,
        max_abs_diff(red.rho_b.matrix(),
                     partial_trace(psi.projector(), {o.dim_a, o.dim_b}, 1)));

    // polar decompositions and support projectors
    const JmapPair j = polar_jmaps(psi);
    const ComplexMatrix sqrt_a = matrix_sqrt(red.rho_a.matrix());
    const ComplexMatrix sqrt_b = matrix_sqrt(red.rho_b.matrix());
    err_polar = std::max(
        err_polar,
        max_abs_diff(s_ba.kmatrix(),
                     compose_anti_linear(j.j_ba, sqrt_a).kmatrix()));
    err_polar = std::max(
        err_polar,
        max_abs_diff(s_ba.kmatrix(),
                     compose_linear_anti(sqrt_b, j.j_ba).kmatrix()));
    const AntilinearMap s_ab = smap_from_vector(psi, SmapDirection::AB);
    err_polar = std::max(
        err_polar,
        max_abs_diff(s_ab.kmatrix(),
                     compose_anti_linear(j.j_ab, sqrt_b).kmatrix()));
    err_polar = std::max(
        err_polar,
        max_abs_diff(s_ab.kmatrix(),
                     compose_linear_anti(sqrt_a, j.j_ab).kmatrix()));
    err_support = std::max(
        err_support,
        max_abs_diff(compose_anti_anti(j.j_ab, j.j_ba),
                     support_projector(red.rho_a.matrix())));
    err_support = std::max(
        err_support,
        max_abs_diff(compose_anti_anti(j.j_ba, j.j_ab),
                     support_projector(red.rho_b.matrix())));

    // Schmidt relations: s maps the j-th left vector to sqrt(p_j) right_j
    for (std::size_t k = 0; k < sd.coefficients.size(); ++k) {
      const ComplexVector mapped =
          s_ba.apply(sd.left_vectors.col(static_cast<Index>(k)));
      const ComplexVector expected =
          std::sqrt(sd.coefficients[k]) *
          sd.right_vectors.col(static_cast<Index>(k));
      err_schmidt =
          std::max(err_schmidt, (mapped - expected).cwiseAbs().maxCoeff());
    }
    err_schmidt = std::max(
        err_schmidt,
        (sd.reconstruct() - psi.amplitudes()).cwiseAbs().maxCoeff());

    // round trip through the Hilbert-Schmidt bijection
    err_roundtrip = std::max(
        err_roundtrip,
        (vector_from_smap(s_ba, SmapDirection::BA).amplitudes() -
         psi.amplitudes())
            .cwiseAbs()
            .maxCoeff());

    // j-map transformation under local unitaries (full-rank states)
    if (schmidt(psi).rank() ==
        static_cast<std::size_t>(std::min(o.dim_a, o.dim_b))) {
      const ComplexMatrix ua = rng.haar_unitary(o.dim_a);
      const ComplexMatrix ub = rng.haar_unitary(o.dim_b);
      const ComplexVector moved = tensor(ua, ub) * psi.amplitudes();
      const JmapPair jm = polar_jmaps(
          PureState::unnormalized({o.dim_a, o.dim_b}, moved));
      const ComplexMatrix expected_j = ub * j.j_ba.kmatrix() * ua.transpose();
      err_unitary_j = std::max(
          err_unitary_j, max_abs_diff(jm.j_ba.kmatrix(), expected_j));
    }
  }
  s.record("smap.prepared_vector_identity", err_defining, 1e-10);
  s.record("smap.decomposition_independence", err_decomp, 1e-12);
  s.record("smap.overlap_trace_formulas", err_overlap, 1e-10);
  s.record("smap.reduced_density_routes", err_reduced, 1e-10);
  s.record("smap.polar_factorizations", err_polar, 1e-9);
  s.record("smap.support_projectors", err_support, 1e-9);
  s.record("smap.schmidt_relations", err_schmidt, 1e-9);
  s.record("smap.roundtrip_bijection", err_roundtrip, 0.0);
  s.record("smap.jmap_unitary_transport", err_unitary_j, 1e-9);
}

// ---------------------------------------------------------------------
// measurement updates and resolutions
void check_measurement(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  double err_prob = 0.0, err_resolution = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const PureState psi = rng.pure_state({o.dim_a, o.dim_b});
    const ComplexMatrix basis = rng.haar_unitary(o.dim_a);

    double total = 0.0;
    for (Index k = 0; k < o.dim_a; ++k) {
      total += measure_update_vector(psi, basis.col(k)).probability;
    }
    err_prob = std::max(err_prob, std::abs(total - 1.0));

    std::vector<ComplexVector> family;
    for (Index k = 0; k < o.dim_a; ++k) family.emplace_back(basis.col(k));
    const PureState rebuilt = reconstruct_from_resolution(psi, family);
    err_resolution = std::max(
        err_resolution,
        (rebuilt.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff());
  }
  s.record("smap.measurement_probabilities_sum", err_prob, 1e-10);
  s.record("smap.resolution_reconstruction", err_resolution, 1e-10);
}

// ---------------------------------------------------------------------
// channel
void check_channel(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  const Index d = o.dim_a * o.dim_b;
  double err_factor = 0.0, err_prob = 0.0, err_dual = 0.0;
  double err_choi = 0.0, err_indep = 0.0, err_mirror = 0.0;
  double distinguish = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const Index rank = 1 + static_cast<Index>(rng.uniform() * d);
    const DensityOperator rho = rng.density(d, std::min(rank, d));
    const ChannelMap channel = channel_from_density(rho, o.dim_a, o.dim_b);
    const ComplexVector phi = rng.unit_vector(o.dim_a);
    const ComplexMatrix pi = phi * phi.adjoint();

    // measurement factorization
    const LuedersUpdate update = lueders_update(rho, o.dim_a, o.dim_b, phi);
    err_factor = std::max(
        err_factor,
        max_abs_diff(update.post_state.matrix(),
                     tensor(pi, apply_channel(channel, pi))));

    // output weight equals the outcome probability
    const ComplexMatrix rho_a =
        partial_trace(rho.matrix(), {o.dim_a, o.dim_b}, 0);
    const Complex expected_prob = phi.dot(rho_a * phi);
    err_prob = std::max(
        err_prob, std::abs(apply_channel(channel, pi).trace() - expected_prob));
    err_prob =
        std::max(err_prob, std::abs(update.probability - expected_prob.real()));

    // dual transport of expectation values
    const ComplexMatrix y = rng.gaussian_matrix(o.dim_b, o.dim_b);
    const ComplexMatrix x = dual_channel(channel, y);
    err_dual = std::max(
        err_dual, std::abs((pi * x).trace() -
                           (apply_channel(channel, pi) * y).trace()));

    if (t < 10) {
      // conjugated map is completely positive
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
          conjugated_choi_matrix(channel), Eigen::EigenvaluesOnly);
      err_choi = std::max(err_choi, -es.eigenvalues().minCoeff());

      // unitary remixing of the decomposition
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho.matrix());
      std::vector<ComplexVector> vectors;
      for (Index i = 0; i < d; ++i) {
        if (eig.eigenvalues()(i) > RANK_TOL) {
          vectors.push_back(std::sqrt(eig.eigenvalues()(i)) *
                            eig.eigenvectors().col(i));
        }
      }
      const Index r = static_cast<Index>(vectors.size());
      const ComplexMatrix mix = rng.haar_unitary(r);
      std::vector<ComplexVector> remixed(static_cast<std::size_t>(r));
      for (Index i = 0; i < r; ++i) {
        ComplexVector v = ComplexVector::Zero(d);
        for (Index k = 0; k < r; ++k)
          v += mix(i, k) * vectors[static_cast<std::size_t>(k)];
        remixed[static_cast<std::size_t>(i)] = std::move(v);
      }
      err_indep = std::max(err_indep,
                           channel_decomposition_independence(
                               rho, o.dim_a, o.dim_b, remixed)
                               .max_error);

      // mirrored channel through the factor swap
      const ComplexMatrix swap = swap_factors(o.dim_a, o.dim_b);
      const DensityOperator swapped(
          ComplexMatrix(swap * rho.matrix() * swap.adjoint()));
      const ChannelMap mirrored =
          channel_from_density(swapped, o.dim_b, o.dim_a);
      const ComplexVector phi_b = rng.unit_vector(o.dim_b);
      const ComplexMatrix pi_b = phi_b * phi_b.adjoint();
      const ComplexMatrix lhs =
          tensor(ComplexMatrix::Identity(o.dim_a, o.dim_a), pi_b) *
          rho.matrix() *
          tensor(ComplexMatrix::Identity(o.dim_a, o.dim_a), pi_b);
      err_mirror = std::max(
          err_mirror,
          max_abs_diff(lhs, tensor(apply_channel(mirrored, pi_b), pi_b)));
    }
  }

  // distinct generating operators act differently on some basis projector
  {
    const DensityOperator r1 = rng.density(d, d);
    const DensityOperator r2 = rng.density(d, d);
    const ChannelMap c1 = channel_from_density(r1, o.dim_a, o.dim_b);
    const ChannelMap c2 = channel_from_density(r2, o.dim_a, o.dim_b);
    for (Index k = 0; k < o.dim_a; ++k) {
      ComplexMatrix pi = ComplexMatrix::Zero(o.dim_a, o.dim_a);
      pi(k, k) = 1.0;
      distinguish = std::max(
          distinguish, max_abs_diff(apply_channel(c1, pi),
                                    apply_channel(c2, pi)));
    }
  }

  s.record("channel.measurement_factorization", err_factor, 1e-10);
  s.record("channel.outcome_probability", err_prob, 1e-10);
  s.record("channel.observable_duality", err_dual, 1e-10);
  s.record("channel.conjugated_choi_positive", err_choi, 1e-9);
  s.record("channel.decomposition_independence", err_indep, 1e-9);
  s.record("channel.factor_swap_mirror", err_mirror, 1e-10);
  s.record("channel.distinguishes_generators",
           distinguish > 1e-6 ? 0.0 : 1.0, 0.5);
}

// ---------------------------------------------------------------------
// teleport
void check_teleport(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  const Index da = o.dim_a, db = o.dim_b, dc = o.dim_b;
  double err_projection = 0.0, err_quality = 0.0, err_linear = 0.0;
  double err_prob_sum = 0.0, err_mixed = 0.0;
  for (int t = 0; t < std::max(1, o.trials / 5); ++t) {
    const PureState ancilla = rng.pure_state({db, dc});
    const MeasurementBasis basis = rng.measurement_basis(da, db);
    const ComplexVector phi = rng.unit_vector(da);

    // tripartite input phi (x) ancilla
    ComplexVector tripartite(da * db * dc);
    for (Index a = 0; a < da; ++a)
      for (Index bc = 0; bc < db * dc; ++bc)
        tripartite(a * db * dc + bc) = phi(a) * ancilla.amplitudes()(bc);

    double total = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const TeleportOutcome outcome = teleport_outcome(phi, ancilla, basis, i);
      total += outcome.probability;

      // projection onto |psi_i><psi_i| (x) 1 equals psi_i (x) t_i phi
      const ComplexMatrix proj = tensor(
          basis.vector(i).projector(), ComplexMatrix::Identity(dc, dc));
      const ComplexVector lhs = proj * tripartite;
      const ComplexVector rhs =
          embed_product(basis.vector(i).amplitudes(), outcome.output);
      err_projection =
          std::max(err_projection, (lhs - rhs).cwiseAbs().maxCoeff());

      const Complex lambda = rng.gaussian_complex();
      err_linear = std::max(
          err_linear, ((outcome.map * (lambda * phi)) -
                       lambda * (outcome.map * phi))
                          .cwiseAbs()
                          .maxCoeff());

      const DensityOperator rho_i_b =
          partial_trace(DensityOperator::from_pure(basis.vector(i)),
                        {da, db}, 1);
      const DensityOperator rho_b = partial_trace(
          DensityOperator::from_pure(ancilla), {db, dc}, 0);
      const TeleportQuality q =
          teleport_quality(outcome.map, rho_i_b, rho_b);
      err_quality = std::max(
          err_quality,
          std::abs(q.transporter_trace_norm - q.sqrt_fidelity));

      // a pure ancilla's channel route agrees with conjugation by t_i
      const DensityOperator omega = rng.density(da, da);
      const ComplexMatrix direct = teleport_density(omega, outcome.map);
      const ComplexMatrix through_channel = teleport_mixed_ancilla(
          omega, DensityOperator::from_pure(ancilla), db, dc,
          basis.vector(i));
      err_mixed = std::max(err_mixed, max_abs_diff(direct, through_channel));
    }
    err_prob_sum = std::max(err_prob_sum, std::abs(total - 1.0));
  }
  s.record("teleport.tripartite_projection", err_projection, 1e-10);
  s.record("teleport.trace_norm_equals_sqrt_fidelity", err_quality, 1e-8);
  s.record("teleport.transporter_linear", err_linear, 1e-10);
  s.record("teleport.outcome_probabilities_sum", err_prob_sum, 1e-10);
  s.record("teleport.pure_ancilla_channel_route", err_mixed, 1e-9);
}

// ---------------------------------------------------------------------
// stabilizer
void check_stabilizer(Suite& s, Rng& rng) {
  double err = 0.0;
  const int rounds = std::max(1, s.opt().trials / 2);
  for (int k = 0; k < 4; ++k) {
    const PureState bell = bell_state(k);
    for (int t = 0; t < rounds / 4 + 1; ++t) {
      const ComplexMatrix ua = rng.haar_unitary(2);
      err = std::max(err, stabilizer_check(bell, ua).error);
    }
  }
  s.record("smap.local_stabilizer_fixes_state", err, 1e-9);
}

// ---------------------------------------------------------------------
// modular
void check_modular(Suite& s, Rng& rng) {
  const auto& o = s.opt();
  double err_involution = 0.0, err_antiunitary = 0.0;
  double err_basis_action = 0.0, err_twist_relations = 0.0, err_ds = 0.0;
  for (int t = 0; t < std::max(1, o.trials / 10); ++t) {
    const PureState psi = rng.pure_state({o.dim_a, o.dim_b});
    const TwistedAntilinearOperator j = modular_conjugation(psi);
    const ReducedDensities rho = reduced_densities_via_smaps(psi);
    const ComplexMatrix support =
        tensor(support_projector(rho.rho_a.matrix()),
               support_projector(rho.rho_b.matrix()));

    // J^2 equals the support projector
    const ComplexMatrix j_squared =
        j.kmatrix() * j.kmatrix().conjugate();
    err_involution = std::max(err_involution,
                              max_abs_diff(j_squared, support));

    // antiunitarity on support vectors
    const ComplexVector u = support * rng.unit_vector(o.dim_a * o.dim_b);
    const ComplexVector v = support * rng.unit_vector(o.dim_a * o.dim_b);
    const Complex lhs = j.apply(u).dot(j.apply(v));
    const Complex rhs = v.dot(u);
    err_antiunitary = std::max(err_antiunitary, std::abs(lhs - rhs));

    // product-basis action in the Schmidt bases
    const SchmidtDecomposition sd = schmidt(psi);
    const std::size_t m = sd.coefficients.size();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const ComplexVector in = embed_product(
            sd.left_vectors.col(static_cast<Index>(a)),
            sd.right_vectors.col(static_cast<Index>(b)));
        const bool on_support = sd.coefficients[a] > RANK_TOL &&
                                sd.coefficients[b] > RANK_TOL;
        const ComplexVector expected =
            on_support ? ComplexVector(embed_product(
                             sd.left_vectors.col(static_cast<Index>(b)),
                             sd.right_vectors.col(static_cast<Index>(a))))
                       : ComplexVector(ComplexVector::Zero(
                             o.dim_a * o.dim_b));
        err_basis_action = std::max(
            err_basis_action,
            (j.apply(in) - expected).cwiseAbs().maxCoeff());
      }
    }

    // mixed twisted doubles against sqrt-weighted J
    const JmapPair jm = polar_jmaps(psi);
    const AntilinearMap s_ba = smap_from_vector(psi, SmapDirection::BA);
    const AntilinearMap s_ab = smap_from_vector(psi, SmapDirection::AB);
    const ComplexMatrix sqrt_a = matrix_sqrt(rho.rho_a.matrix());
    const ComplexMatrix sqrt_b = matrix_sqrt(rho.rho_b.matrix());
    const ComplexMatrix jj = j.kmatrix();
    err_twist_relations = std::max(
        err_twist_relations,
        max_abs_diff(twisted_tensor(s_ab, s_ba).kmatrix(),
                     tensor(sqrt_a, sqrt_b) * jj));
    err_twist_relations = std::max(
        err_twist_relations,
        max_abs_diff(twisted_tensor(jm.j_ab, s_ba).kmatrix(),
                     tensor(ComplexMatrix::Identity(o.dim_a, o.dim_a),
                            sqrt_b) *
                         jj));
    err_twist_relations = std::max(
        err_twist_relations,
        max_abs_diff(twisted_tensor(s_ab, jm.j_ba).kmatrix(),
                     tensor(sqrt_a,
                            ComplexMatrix::Identity(o.dim_b, o.dim_b)) *
                         jj));

    // operator relations on full-rank states
    if (sd.rank() == static_cast<std::size_t>(std::min(o.dim_a, o.dim_b))) {
      const DsReport ds = verify_ds_relations(psi);
      err_ds = std::max({err_ds, ds.error_sqrt_delta, ds.error_s_embedding});
      // S fixes its defining vector
      const TwistedAntilinearOperator sop = s_operator(psi);
      err_ds = std::max(err_ds, (sop.apply(psi.amplitudes()) -
                                 psi.amplitudes())
                                    .cwiseAbs()
                                    .maxCoeff());
    }
  }
  s.record("modular.conjugation_involution", err_involution, 1e-9);
  s.record("modular.conjugation_antiunitary", err_antiunitary, 1e-9);
  s.record("modular.schmidt_basis_action", err_basis_action, 1e-9);
  s.record("modular.twisted_double_relations", err_twist_relations, 1e-9);
  s.record("modular.delta_s_identities", err_ds, 1e-9);
}

// ---------------------------------------------------------------------
// states
void check_states(Suite& s, Rng&) {
  const auto& o = s.opt();
  double err_repro = 0.0, err_unitary = 0.0, err_fixture = 0.0;
  {
    Rng r1(Seed{o.seed + 13});
    Rng r2(Seed{o.seed + 13});
    const ComplexMatrix u1 = r1.haar_unitary(3);
    const ComplexMatrix u2 = r2.haar_unitary(3);
    err_repro = max_abs_diff(u1, u2);
    err_unitary = max_abs_diff(u1.adjoint() * u1,
                               ComplexMatrix::Identity(3, 3));
  }
  for (int k = 0; k < 4; ++k) {
    const PureState b = bell_state(k);
    err_fixture = std::max(err_fixture, std::abs(b.norm() - 1.0));
    if (entanglement_class(b) != EntanglementClass::MaximallyEntangled) {
      err_fixture = 1.0;
    }
  }
  // Werner endpoints
  err_fixture = std::max(
      err_fixture,
      max_abs_diff(werner(1.0).matrix(), bell_state(0).projector()));
  err_fixture = std::max(
      err_fixture, max_abs_diff(werner(0.0).matrix(),
                                0.25 * ComplexMatrix::Identity(4, 4)));
  s.record("states.seed_reproducibility", err_repro, 0.0);
  s.record("states.haar_unitary", err_unitary, 1e-12);
  s.record("states.fixture_invariants", err_fixture, 1e-12);
}

}  // namespace

std::vector<CheckResult> verify_all(const VerifyOptions& options) {
  Suite suite(options);
  Rng rng(Seed{options.seed});
  check_core(suite, rng);
  check_antilinear(suite, rng);
  check_smap(suite, rng);
  check_measurement(suite, rng);
  check_channel(suite, rng);
  check_teleport(suite, rng);
  check_stabilizer(suite, rng);
  check_modular(suite, rng);
  check_states(suite, rng);
  return suite.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace eprkit
