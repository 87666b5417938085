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

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eprkit/channel.hpp"
#include "eprkit/core.hpp"
#include "eprkit/io.hpp"
#include "eprkit/modular.hpp"
#include "eprkit/smap.hpp"
#include "eprkit/states.hpp"
#include "eprkit/teleport.hpp"
#include "eprkit/verify.hpp"

namespace {

using namespace eprkit;
using nlohmann::json;

// exit codes: 0 ok, 1 invariant/verification failure, 2 usage, 3 parse
constexpr int EXIT_VERIFICATION = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_PARSE = 3;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const Document& doc, const std::string& out_path, bool pretty) {
  if (!out_path.empty()) {
    doc.save(out_path);
  } else {
    std::cout << doc.dump(pretty) << '\n';
  }
}

ComplexVector load_vector(const std::string& path) {
  const Document doc = Document::load(path);
  if (doc.kind() == "pure_state") {
    return doc.to_state().amplitudes();
  }
  const ComplexMatrix m = doc.to_operator();
  if (m.cols() != 1) {
    throw ParseError("expected a column vector (operator with one column)");
  }
  return m.col(0);
}

// states and densities both work as protocol inputs
DensityOperator load_input_density(const std::string& path,
                                   std::vector<Index>* dims_out) {
  const Document doc = Document::load(path);
  if (doc.kind() == "pure_state") {
    const PureState psi = doc.to_state();
    if (dims_out) *dims_out = psi.factor_dims();
    return DensityOperator::from_pure(psi);
  }
  if (doc.kind() == "operator") {
    const ComplexMatrix m = doc.to_operator();
    if (m.cols() == 1) {
      if (dims_out) *dims_out = {m.rows()};
      return DensityOperator(m * m.adjoint());
    }
  }
  if (dims_out) *dims_out = doc.dims();
  return doc.to_density();
}

json outcome_to_json(const ProtocolOutcome& o, bool with_correction) {
  json j;
  j["index"] = o.index;
  j["probability"] = o.probability;
  j["output"] = encode_matrix(o.output);
  if (with_correction) j["corrected_output"] = encode_matrix(o.corrected_output);
  if (std::isfinite(o.fidelity_to_input)) {
    j["fidelity_to_input"] = o.fidelity_to_input;
  }
  return j;
}

// ---------------------------------------------------------------------
// gen

int run_gen(const std::string& what, int bell_k, double werner_p,
            const std::vector<Index>& dims, Index rank, Index vec_dim,
            Index vec_index, std::uint64_t seed, const std::string& out,
            bool pretty) {
  MetaMap meta{{"seed", std::to_string(seed)}};
  if (what == "bell") {
    emit(Document::from_state(bell_state(bell_k)), out, pretty);
  } else if (what == "bell-basis") {
    emit(Document::from_basis(bell_basis()), out, pretty);
  } else if (what == "werner") {
    emit(Document::from_density(werner(werner_p), {2, 2},
                                {{"p", format_double(werner_p)}}),
         out, pretty);
  } else if (what == "random-state") {
    if (dims.size() < 2) {
      throw ValueError("gen random-state needs --dims with 2 or 3 factors");
    }
    emit(Document::from_state(random_pure(dims, Seed{seed}), meta), out,
         pretty);
  } else if (what == "random-density") {
    if (dims.empty()) throw ValueError("gen random-density needs --dims");
    Index total = 1;
    for (Index d : dims) total *= d;
    const Index r = rank > 0 ? rank : total;
    emit(Document::from_density(random_density(total, r, Seed{seed}), dims,
                                meta),
         out, pretty);
  } else if (what == "random-vector") {
    Rng rng{Seed{seed}};
    emit(Document::from_operator(rng.unit_vector(vec_dim), meta), out, pretty);
  } else if (what == "basis-vector") {
    ComplexVector v = ComplexVector::Zero(vec_dim);
    if (vec_index < 0 || vec_index >= vec_dim) {
      throw ValueError("gen basis-vector: index out of range");
    }
    v(vec_index) = 1.0;
    emit(Document::from_operator(v), out, pretty);
  } else {
    throw ValueError("unknown gen target: " + what);
  }
  return 0;
}

// ---------------------------------------------------------------------
// schmidt

int run_schmidt(const std::string& path, const std::string& out, bool pretty) {
  const PureState psi = Document::load(path).to_state();
  const SchmidtDecomposition sd = schmidt(psi);
  const EntanglementClass cls = entanglement_class(psi);

  json body;
  body["coefficients"] = sd.coefficients;
  body["rank"] = sd.rank();
  body["entanglement_class"] = to_string(cls);
  body["left_vectors"] = encode_matrix(sd.left_vectors);
  body["right_vectors"] = encode_matrix(sd.right_vectors);

  if (pretty && out.empty()) {
    std::cout << "schmidt coefficients:";
    for (double p : sd.coefficients) std::cout << ' ' << format_double(p);
    std::cout << "\nrank: " << sd.rank()
              << "\nentanglement class: " << to_string(cls) << '\n';
    return 0;
  }
  emit(Document::report("schmidt", body), out, pretty);
  return 0;
}

// ---------------------------------------------------------------------
// smap

int run_smap(const std::string& path, const std::string& direction,
             const std::string& out, bool pretty) {
  const PureState psi = Document::load(path).to_state();
  const SmapDirection dir =
      direction == "ab" ? SmapDirection::AB : SmapDirection::BA;
  const AntilinearMap map = smap_from_vector(psi, dir);
  emit(Document::from_map(map, {{"direction", direction}}), out, pretty);
  return 0;
}

// ---------------------------------------------------------------------
// channel

int run_channel_build(const std::string& density_path,
                      std::vector<Index> dims, const std::string& out,
                      bool pretty) {
  std::vector<Index> file_dims;
  const DensityOperator rho = load_input_density(density_path, &file_dims);
  if (dims.empty()) dims = file_dims;
  if (dims.size() != 2) {
    throw ValueError("channel build needs two factor dims (file dims or --dims)");
  }
  emit(Document::from_channel(channel_from_density(rho, dims[0], dims[1])),
       out, pretty);
  return 0;
}

int run_channel_apply(const std::string& channel_path,
                      const std::string& op_path, const std::string& out,
                      bool pretty) {
  const ChannelMap channel = Document::load(channel_path).to_channel();
  const Document op_doc = Document::load(op_path);
  const ComplexMatrix omega = op_doc.kind() == "density"
                                  ? op_doc.to_density().matrix()
                                  : op_doc.to_operator();
  emit(Document::from_operator(apply_channel(channel, omega)), out, pretty);
  return 0;
}

int run_channel_dual(const std::string& channel_path,
                     const std::string& op_path, const std::string& out,
                     bool pretty) {
  const ChannelMap channel = Document::load(channel_path).to_channel();
  const Document op_doc = Document::load(op_path);
  const ComplexMatrix y = op_doc.kind() == "density"
                              ? op_doc.to_density().matrix()
                              : op_doc.to_operator();
  emit(Document::from_operator(dual_channel(channel, y)), out, pretty);
  return 0;
}

// ---------------------------------------------------------------------
// measure

int run_measure(const std::string& state_path, const std::string& vector_path,
                const std::string& out, bool pretty) {
  std::vector<Index> dims;
  const DensityOperator rho = load_input_density(state_path, &dims);
  if (dims.size() != 2) {
    throw ValueError("measure needs a bipartite state/density (two factor dims)");
  }
  const ComplexVector phi = load_vector(vector_path);
  const LuedersUpdate update = lueders_update(rho, dims[0], dims[1], phi);

  json body;
  body["probability"] = update.probability;
  body["post_state"] = encode_matrix(update.post_state.matrix());
  body["dims"] = dims;
  if (pretty && out.empty()) {
    std::cout << "probability: " << format_double(update.probability) << '\n';
    return 0;
  }
  emit(Document::report("measure", body), out, pretty);
  return 0;
}

// ---------------------------------------------------------------------
// teleport run

int run_teleport_run(const std::string& input_path,
                     const std::string& ancilla_path,
                     const std::string& basis_spec,
                     const std::string& corrections_spec, std::uint64_t seed,
                     int samples, const std::string& out, bool pretty) {
  const DensityOperator omega = load_input_density(input_path, nullptr);

  std::vector<Index> ancilla_dims;
  const DensityOperator ancilla =
      load_input_density(ancilla_path, &ancilla_dims);
  if (ancilla_dims.size() != 2) {
    throw ValueError("ancilla must carry two factor dims (B and C)");
  }
  const Index dim_b = ancilla_dims[0], dim_c = ancilla_dims[1];

  std::optional<MeasurementBasis> basis;
  if (basis_spec == "bell") {
    basis = bell_basis();
  } else {
    basis = Document::load(basis_spec).to_basis();
  }

  std::optional<std::vector<ComplexMatrix>> corrections;
  if (corrections_spec == "pauli") {
    corrections = derive_bell_corrections();
  } else if (!corrections_spec.empty()) {
    corrections = Document::load(corrections_spec).to_operator_list();
  }

  const ProtocolReport report =
      run_protocol(omega, ancilla, dim_b, dim_c, *basis, corrections);

  json body;
  body["outcomes"] = json::array();
  for (const auto& o : report.outcomes) {
    body["outcomes"].push_back(outcome_to_json(o, corrections.has_value()));
  }
  body["total_probability"] = report.total_probability;
  if (std::isfinite(report.average_fidelity)) {
    body["average_fidelity"] = report.average_fidelity;
  }

  if (samples > 0) {
    // seeded sampling over the exact outcome distribution
    Rng rng{Seed{seed}};
    std::vector<int> counts(report.outcomes.size(), 0);
    for (int t = 0; t < samples; ++t) {
      const double u = rng.uniform() * report.total_probability;
      double acc = 0.0;
      std::size_t drawn = report.outcomes.size() - 1;
      for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
        acc += report.outcomes[i].probability;
        if (u < acc) {
          drawn = i;
          break;
        }
      }
      ++counts[drawn];
    }
    body["samples"] = samples;
    body["sample_counts"] = counts;
    body["seed"] = seed;
  }

  if (pretty && out.empty()) {
    std::cout << "outcome  probability           fidelity_to_input\n";
    for (const auto& o : report.outcomes) {
      std::cout << o.index << "        " << format_double(o.probability)
                << "   "
                << (std::isfinite(o.fidelity_to_input)
                        ? format_double(o.fidelity_to_input)
                        : "n/a")
                << '\n';
    }
    return 0;
  }
  emit(Document::report("teleport_run", body), out, pretty);
  return 0;
}

// ---------------------------------------------------------------------
// teleport sweep

int run_teleport_sweep(const std::vector<double>& ps,
                       const std::string& input_path, std::uint64_t seed) {
  DensityOperator omega = [&] {
    if (!input_path.empty()) return load_input_density(input_path, nullptr);
    Rng rng{Seed{seed}};
    const ComplexVector phi = rng.unit_vector(2);
    return DensityOperator(phi * phi.adjoint());
  }();
  if (omega.dim() != 2) {
    throw ValueError("teleport sweep expects a qubit input");
  }

  const MeasurementBasis basis = bell_basis();
  const auto corrections = derive_bell_corrections();

  std::cout << "p,outcome,probability,trace_norm,sqrt_fidelity,"
               "corrected_fidelity\n";
  for (double p : ps) {
    const DensityOperator ancilla = werner(p);
    const ComplexMatrix rho_b =
        partial_trace(ancilla.matrix(), {2, 2}, 0);
    const ProtocolReport report =
        run_protocol(omega, ancilla, 2, 2, basis, corrections);
    for (const auto& o : report.outcomes) {
      const ComplexMatrix c_i = basis.vector(o.index).coefficient_matrix();
      // transporter magnitude; reduces to ||t_i||_1 for a pure ancilla
      const double tn =
          trace_norm(matrix_sqrt(rho_b.conjugate()) * c_i.adjoint());
      const ComplexMatrix rho_i_b =
          partial_trace(basis.vector(o.index).projector(), {2, 2}, 1);
      const double sf = std::sqrt(fidelity(rho_i_b, rho_b));
      std::cout << format_double(p) << ',' << o.index << ','
                << format_double(o.probability) << ',' << format_double(tn)
                << ',' << format_double(sf) << ','
                << format_double(o.fidelity_to_input) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------
// modular

int run_modular(const std::string& path, const std::string& out,
                bool pretty) {
  const PureState psi = Document::load(path).to_state();
  const TwistedAntilinearOperator j = modular_conjugation(psi);
  const ComplexMatrix delta = modular_operator(psi);
  const TwistedAntilinearOperator sop = s_operator(psi);
  const DsReport ds = verify_ds_relations(psi);

  json body;
  body["modular_conjugation"] = encode_matrix(j.kmatrix());
  body["modular_operator"] = encode_matrix(delta);
  body["s_operator"] = encode_matrix(sop.kmatrix());
  body["ds_residuals"] = {{"sqrt_delta_identity", ds.error_sqrt_delta},
                          {"s_embedding_identity", ds.error_s_embedding},
                          {"consistent", ds.consistent}};

  if (pretty && out.empty()) {
    std::cout << "ds residuals: sqrt_delta "
              << format_double(ds.error_sqrt_delta) << ", s_embedding "
              << format_double(ds.error_s_embedding) << '\n';
    return 0;
  }
  emit(Document::report("modular", body), out, pretty);
  return 0;
}

// ---------------------------------------------------------------------
// verify

int run_verify(std::vector<Index> dims, int trials, std::uint64_t seed,
               const std::string& out, bool pretty) {
  VerifyOptions options;
  if (!dims.empty()) {
    if (dims.size() != 2) throw ValueError("--dims needs two factor dims");
    options.dim_a = dims[0];
    options.dim_b = dims[1];
  }
  options.trials = trials;
  options.seed = seed;

  const auto results = verify_all(options);
  const bool ok = all_passed(results);

  if (pretty) {
    for (const auto& r : results) {
      std::printf("%-4s %-45s max_err %-13.3e tol %.1e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.max_error,
                  r.tolerance);
    }
    std::printf("%s: %zu checks\n", ok ? "OK" : "FAILED", results.size());
  }
  json body;
  body["checks"] = json::array();
  for (const auto& r : results) {
    body["checks"].push_back({{"name", r.name},
                              {"passed", r.passed},
                              {"max_error", r.max_error},
                              {"tolerance", r.tolerance}});
  }
  body["all_passed"] = ok;
  const Document doc = Document::report(
      "verify", body,
      {{"seed", std::to_string(seed)}, {"trials", std::to_string(trials)}});
  if (!out.empty()) {
    doc.save(out);
  } else if (!pretty) {
    std::cout << doc.dump(false) << '\n';
  }
  return ok ? 0 : EXIT_VERIFICATION;
}

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    dims.push_back(static_cast<Index>(std::stoll(item)));
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPR channel maps: antilinear s-maps, channel maps, "
               "teleportation and modular objects on finite-dimensional "
               "bipartite systems"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "human-readable output");

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "generator seed")
      ->envname("EPRKIT_SEED");

  std::string out_path;
  app.add_option("--out", out_path, "write the result to a file");

  // gen
  auto* gen =
      app.add_subcommand("gen", "generate fixture files")->fallthrough();
  std::string gen_what;
  gen->add_option("target", gen_what,
                  "bell | bell-basis | werner | random-state | "
                  "random-density | random-vector | basis-vector")
      ->required();
  int bell_k = 0;
  gen->add_option("--k", bell_k, "Bell state index 0..3");
  double werner_p = 1.0;
  gen->add_option("--p", werner_p, "Werner mixing parameter");
  std::string gen_dims_text;
  gen->add_option("--dims", gen_dims_text, "factor dims, e.g. 2,2");
  Index gen_rank = 0;
  gen->add_option("--rank", gen_rank, "density rank (default full)");
  Index gen_dim = 2;
  gen->add_option("--dim", gen_dim, "vector dimension");
  Index gen_index = 0;
  gen->add_option("--index", gen_index, "basis vector index");

  // schmidt
  auto* schmidt_cmd =
      app.add_subcommand("schmidt",
                         "Schmidt coefficients and entanglement class")
          ->fallthrough();
  std::string schmidt_path;
  schmidt_cmd->add_option("state", schmidt_path, "pure state file")
      ->required();

  // smap
  auto* smap_cmd =
      app.add_subcommand("smap", "the antilinear map of a bipartite vector")
          ->fallthrough();
  std::string smap_path, smap_direction = "ba";
  smap_cmd->add_option("state", smap_path, "pure state file")->required();
  smap_cmd->add_option("--direction", smap_direction, "ba | ab")
      ->check(CLI::IsMember({"ba", "ab"}));

  // channel
  auto* channel_cmd =
      app.add_subcommand("channel", "EPR channel maps")->fallthrough();
  channel_cmd->require_subcommand(1);
  auto* channel_build =
      channel_cmd->add_subcommand("build", "channel map of a density operator")
          ->fallthrough();
  std::string channel_density, channel_dims_text;
  channel_build->add_option("density", channel_density)->required();
  channel_build->add_option("--dims", channel_dims_text,
                            "factor dims override, e.g. 2,2");
  auto* channel_apply_cmd =
      channel_cmd->add_subcommand("apply", "apply a channel to an operator")
          ->fallthrough();
  std::string apply_channel_path, apply_op_path;
  channel_apply_cmd->add_option("channel", apply_channel_path)->required();
  channel_apply_cmd->add_option("operator", apply_op_path)->required();
  auto* channel_dual_cmd =
      channel_cmd
          ->add_subcommand("dual",
                           "transport an observable through the dual map")
          ->fallthrough();
  std::string dual_channel_path, dual_op_path;
  channel_dual_cmd->add_option("channel", dual_channel_path)->required();
  channel_dual_cmd->add_option("operator", dual_op_path)->required();

  // measure
  auto* measure_cmd =
      app.add_subcommand("measure", "measurement update and probability")
          ->fallthrough();
  std::string measure_state, measure_vector;
  measure_cmd->add_option("state", measure_state)->required();
  measure_cmd->add_option("--vector", measure_vector, "measured unit vector")
      ->required();

  // teleport
  auto* teleport_cmd =
      app.add_subcommand("teleport", "teleportation runs")->fallthrough();
  teleport_cmd->require_subcommand(1);
  auto* teleport_run_cmd =
      teleport_cmd->add_subcommand("run", "enumerate all outcomes")
          ->fallthrough();
  std::string tp_input, tp_ancilla, tp_basis = "bell", tp_corrections;
  int tp_samples = 0;
  teleport_run_cmd->add_option("--input", tp_input, "state on A")->required();
  teleport_run_cmd->add_option("--ancilla", tp_ancilla, "state on B(x)C")
      ->required();
  teleport_run_cmd->add_option("--basis", tp_basis, "bell | basis file");
  teleport_run_cmd->add_option("--corrections", tp_corrections,
                               "pauli | operator_list file");
  teleport_run_cmd->add_option("--samples", tp_samples,
                               "draw N outcomes from the distribution");
  auto* teleport_sweep_cmd =
      teleport_cmd
          ->add_subcommand("sweep", "Werner-ancilla fidelity table (CSV)")
          ->fallthrough();
  std::string sweep_ps_text, sweep_input;
  teleport_sweep_cmd
      ->add_option("--werner-p", sweep_ps_text, "comma list of p values")
      ->required();
  teleport_sweep_cmd->add_option("--input", sweep_input,
                                 "qubit input (default: seeded random)");

  // modular
  auto* modular_cmd =
      app.add_subcommand(
             "modular", "modular conjugation, modular operator and residuals")
          ->fallthrough();
  std::string modular_path;
  modular_cmd->add_option("state", modular_path)->required();

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the invariant suites")->fallthrough();
  std::string verify_what = "all", verify_dims_text;
  int verify_trials = 100;
  verify_cmd->add_option("what", verify_what)->check(CLI::IsMember({"all"}));
  verify_cmd->add_option("--dims", verify_dims_text, "factor dims, e.g. 2,2");
  verify_cmd->add_option("--trials", verify_trials, "random trials per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : EXIT_USAGE;
  }

  try {
    if (*gen) {
      return run_gen(gen_what, bell_k, werner_p, parse_dims(gen_dims_text),
                     gen_rank, gen_dim, gen_index, seed, out_path, pretty);
    }
    if (*schmidt_cmd) return run_schmidt(schmidt_path, out_path, pretty);
    if (*smap_cmd)
      return run_smap(smap_path, smap_direction, out_path, pretty);
    if (*channel_build)
      return run_channel_build(channel_density, parse_dims(channel_dims_text),
                               out_path, pretty);
    if (*channel_apply_cmd)
      return run_channel_apply(apply_channel_path, apply_op_path, out_path,
                               pretty);
    if (*channel_dual_cmd)
      return run_channel_dual(dual_channel_path, dual_op_path, out_path,
                              pretty);
    if (*measure_cmd)
      return run_measure(measure_state, measure_vector, out_path, pretty);
    if (*teleport_run_cmd)
      return run_teleport_run(tp_input, tp_ancilla, tp_basis, tp_corrections,
                              seed, tp_samples, out_path, pretty);
    if (*teleport_sweep_cmd) {
      std::vector<double> ps;
      std::stringstream ss(sweep_ps_text);
      std::string item;
      while (std::getline(ss, item, ',')) ps.push_back(std::stod(item));
      if (ps.empty()) throw ValueError("--werner-p needs at least one value");
      return run_teleport_sweep(ps, sweep_input, seed);
    }
    if (*modular_cmd) return run_modular(modular_path, out_path, pretty);
    if (*verify_cmd)
      return run_verify(parse_dims(verify_dims_text), verify_trials, seed,
                        out_path, pretty);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return EXIT_PARSE;
  } catch (const ValueError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return EXIT_USAGE;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_VERIFICATION;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return EXIT_USAGE;
  }
  return 0;
}
