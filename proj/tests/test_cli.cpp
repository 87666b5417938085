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

// End-to-end coverage of every CLI path: exit codes and parseable output.
// The binary location arrives through the EPRKIT_CLI environment variable.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "eprkit/io.hpp"
#include "eprkit/states.hpp"

using namespace eprkit;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

std::string cli_path() {
  const char* path = std::getenv("EPRKIT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "EPRKIT_CLI must point at the binary");
  return path;
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string command =
      env_prefix + cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    output.append(buffer, n);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "eprkit_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string path_of(const std::string& name) {
  return (work_dir() / name).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen produces loadable fixtures") {
  CHECK(run_cli("gen bell --k 0 --out " + path_of("bell0.state")).exit_code ==
        0);
  const PureState bell = Document::load(path_of("bell0.state")).to_state();
  CHECK((bell.amplitudes() - bell_state(0).amplitudes())
            .cwiseAbs()
            .maxCoeff() == 0.0);

  CHECK(run_cli("gen werner --p 0.5 --out " + path_of("w.density"))
            .exit_code == 0);
  CHECK(Document::load(path_of("w.density")).dims() ==
        std::vector<Index>{2, 2});

  CHECK(run_cli("gen random-state --dims 2,3 --seed 5 --out " +
                path_of("r.state"))
            .exit_code == 0);
  CHECK(run_cli("gen random-state --dims 2,3 --seed 5 --out " +
                path_of("r2.state"))
            .exit_code == 0);
  const PureState r1 = Document::load(path_of("r.state")).to_state();
  const PureState r2 = Document::load(path_of("r2.state")).to_state();
  CHECK((r1.amplitudes() - r2.amplitudes()).cwiseAbs().maxCoeff() == 0.0);

  CHECK(run_cli("gen basis-vector --dim 2 --index 0 --out " +
                path_of("e0.vec"))
            .exit_code == 0);
  CHECK(run_cli("gen bell-basis --out " + path_of("bell.basis")).exit_code ==
        0);
  CHECK(run_cli("gen random-density --dims 2,2 --rank 2 --seed 3 --out " +
                path_of("rho.density"))
            .exit_code == 0);
}

TEST_CASE("schmidt reports coefficients and class") {
  run_cli("gen bell --k 0 --out " + path_of("bell0.state"));
  const CliResult r = run_cli("schmidt " + path_of("bell0.state"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["kind"] == "report");
  CHECK(j["body"]["entanglement_class"] == "maximally_entangled");
  CHECK(j["body"]["coefficients"][0].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["body"]["coefficients"][1].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));

  const CliResult pretty =
      run_cli("--pretty schmidt " + path_of("bell0.state"));
  CHECK(pretty.exit_code == 0);
  CHECK(pretty.output.find("maximally_entangled") != std::string::npos);
}

TEST_CASE("smap emits a parseable antilinear map") {
  run_cli("gen bell --k 0 --out " + path_of("bell0.state"));
  const CliResult r =
      run_cli("smap " + path_of("bell0.state") + " --direction ba");
  CHECK(r.exit_code == 0);
  const AntilinearMap map = Document::parse(r.output).to_map();
  CHECK(max_abs_diff(map.kmatrix(),
                     (1.0 / std::sqrt(2.0)) *
                         ComplexMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("smap directions are adjoints of each other") {
  run_cli("gen random-state --dims 2,3 --seed 6 --out " +
          path_of("psi23.state"));
  const CliResult ba =
      run_cli("smap " + path_of("psi23.state") + " --direction ba");
  const CliResult ab =
      run_cli("smap " + path_of("psi23.state") + " --direction ab");
  CHECK(ba.exit_code == 0);
  CHECK(ab.exit_code == 0);
  const AntilinearMap m_ba = Document::parse(ba.output).to_map();
  const AntilinearMap m_ab = Document::parse(ab.output).to_map();
  CHECK(max_abs_diff(m_ba.adjoint().kmatrix(), m_ab.kmatrix()) == 0.0);
}

TEST_CASE("channel build accepts a dims override for flat densities") {
  run_cli("gen random-density --dims 4 --rank 2 --seed 14 --out " +
          path_of("flat.density"));
  CHECK(run_cli("channel build " + path_of("flat.density")).exit_code == 2);
  const CliResult r = run_cli("channel build " + path_of("flat.density") +
                              " --dims 2,2");
  CHECK(r.exit_code == 0);
  CHECK(Document::parse(r.output).to_channel().src_dim() == 2);
}

TEST_CASE("channel build, apply and dual chain together") {
  run_cli("gen werner --p 1 --out " + path_of("bell.density"));
  CHECK(run_cli("channel build " + path_of("bell.density") + " --out " +
                path_of("bell.channel"))
            .exit_code == 0);
  run_cli("gen basis-vector --dim 2 --index 0 --out " + path_of("e0.vec"));

  // apply to |0><0| via a generated density
  run_cli("gen random-density --dims 2 --rank 1 --seed 9 --out " +
          path_of("omega.density"));
  const CliResult applied = run_cli("channel apply " + path_of("bell.channel") +
                                    " " + path_of("omega.density"));
  CHECK(applied.exit_code == 0);
  const ComplexMatrix out = Document::parse(applied.output).to_operator();
  CHECK(std::abs(out.trace().real() - 0.5) < 1e-9);  // p = <phi|I/2|phi>

  // dual of the identity is the A marginal (I/2 for a Bell generator)
  run_cli("gen basis-vector --dim 2 --index 0 --out " + path_of("unused"));
  std::ofstream id_file(path_of("identity.op"));
  id_file << Document::from_operator(ComplexMatrix::Identity(2, 2)).dump();
  id_file.close();
  const CliResult dual = run_cli("channel dual " + path_of("bell.channel") +
                                 " " + path_of("identity.op"));
  CHECK(dual.exit_code == 0);
  const ComplexMatrix x = Document::parse(dual.output).to_operator();
  CHECK(max_abs_diff(x, 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("measure reports the outcome probability") {
  run_cli("gen werner --p 1 --out " + path_of("bell.density"));
  run_cli("gen basis-vector --dim 2 --index 0 --out " + path_of("e0.vec"));
  const CliResult r = run_cli("measure " + path_of("bell.density") +
                              " --vector " + path_of("e0.vec"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["body"]["probability"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("teleport run with Pauli corrections reaches unit fidelity") {
  run_cli("gen random-state --dims 2,2 --seed 2 --out " +
          path_of("anc.state"));
  run_cli("gen bell --k 0 --out " + path_of("bell_anc.state"));
  run_cli("gen random-vector --dim 2 --seed 12 --out " + path_of("in.vec"));
  const CliResult r = run_cli(
      "teleport run --input " + path_of("in.vec") + " --ancilla " +
      path_of("bell_anc.state") + " --basis bell --corrections pauli");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["body"]["average_fidelity"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& o : j["body"]["outcomes"]) {
    CHECK(o["probability"].get<double>() ==
          doctest::Approx(0.25).epsilon(1e-9));
  }

  // sampling mode is deterministic under a seed
  const CliResult s1 = run_cli(
      "--seed 4 teleport run --input " + path_of("in.vec") + " --ancilla " +
      path_of("bell_anc.state") + " --basis bell --samples 100");
  const CliResult s2 = run_cli(
      "--seed 4 teleport run --input " + path_of("in.vec") + " --ancilla " +
      path_of("bell_anc.state") + " --basis bell --samples 100");
  CHECK(s1.exit_code == 0);
  CHECK(s1.output == s2.output);
  const json sj = json::parse(s1.output);
  int total = 0;
  for (const auto& c : sj["body"]["sample_counts"]) total += c.get<int>();
  CHECK(total == 100);
}

TEST_CASE("teleport sweep emits the fidelity table") {
  const CliResult r =
      run_cli("--seed 7 teleport sweep --werner-p 0,0.25,0.5,0.75,1");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "p,outcome,probability,trace_norm,sqrt_fidelity,corrected_fidelity");
  int rows = 0;
  std::string line;
  double previous_fid = -1.0, last_fid = -1.0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    std::istringstream fields(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(fields, field, ',')) {
      values.push_back(std::stod(field));
    }
    REQUIRE(values.size() == 6);
    CHECK(values[2] == doctest::Approx(0.25).epsilon(1e-9));  // probability
    // corrected fidelity is monotone nondecreasing along the table
    CHECK(values[5] >= previous_fid - 1e-12);
    previous_fid = values[5];
    last_fid = values[5];
  }
  CHECK(rows == 20);  // 5 values of p x 4 outcomes
  CHECK(last_fid == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("verify all succeeds and reports machine-readable results") {
  const CliResult r = run_cli("--seed 7 verify all --trials 40");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["body"]["all_passed"] == true);

  const CliResult pretty =
      run_cli("--pretty --seed 7 verify all --trials 40");
  CHECK(pretty.exit_code == 0);
  CHECK(pretty.output.find("PASS") != std::string::npos);
  CHECK(pretty.output.find("FAIL") == std::string::npos);
}

TEST_CASE("modular reports residuals") {
  run_cli("gen bell --k 0 --out " + path_of("bell0.state"));
  const CliResult r = run_cli("modular " + path_of("bell0.state"));
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["body"]["ds_residuals"]["consistent"] == true);
}

TEST_CASE("a basis file drives teleport run like the built-in one") {
  run_cli("gen bell --k 0 --out " + path_of("bell_anc.state"));
  run_cli("gen bell-basis --out " + path_of("bell.basis"));
  run_cli("gen random-vector --dim 2 --seed 21 --out " + path_of("in2.vec"));
  const CliResult from_file = run_cli(
      "teleport run --input " + path_of("in2.vec") + " --ancilla " +
      path_of("bell_anc.state") + " --basis " + path_of("bell.basis") +
      " --corrections pauli");
  const CliResult built_in = run_cli(
      "teleport run --input " + path_of("in2.vec") + " --ancilla " +
      path_of("bell_anc.state") + " --basis bell --corrections pauli");
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.output == built_in.output);
}

TEST_CASE("EPRKIT_SEED provides the default seed") {
  run_cli("gen bell --k 0 --out " + path_of("bell_anc.state"));
  run_cli("gen random-vector --dim 2 --seed 3 --out " + path_of("in3.vec"));
  const std::string args = "teleport run --input " + path_of("in3.vec") +
                           " --ancilla " + path_of("bell_anc.state") +
                           " --basis bell --samples 50";
  const CliResult via_env = run_cli(args, "EPRKIT_SEED=4 ");
  const CliResult via_flag = run_cli("--seed 4 " + args);
  const CliResult other_env = run_cli(args, "EPRKIT_SEED=5 ");
  CHECK(via_env.exit_code == 0);
  CHECK(via_env.output == via_flag.output);
  CHECK(via_env.output != other_env.output);
}

TEST_CASE("a Werner ancilla file runs the mixed protocol") {
  run_cli("gen werner --p 0.5 --out " + path_of("w05.density"));
  run_cli("gen random-vector --dim 2 --seed 8 --out " + path_of("in4.vec"));
  const CliResult r = run_cli(
      "teleport run --input " + path_of("in4.vec") + " --ancilla " +
      path_of("w05.density") + " --basis bell --corrections pauli");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["body"]["average_fidelity"].get<double>() ==
        doctest::Approx(0.75).epsilon(1e-9));  // (1 + p) / 2 at p = 0.5
}

TEST_CASE("verify accepts dims and trials after the subcommand") {
  const CliResult r = run_cli("verify all --dims 2,3 --trials 20 --seed 3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["body"]["all_passed"] == true);
}

TEST_CASE("exit codes distinguish usage, parse and verification failures") {
  CHECK(run_cli("schmidt").exit_code == 2);             // missing argument
  CHECK(run_cli("frobnicate").exit_code == 2);          // unknown command
  std::ofstream bad(path_of("bad.state"));
  bad << "{ not json";
  bad.close();
  CHECK(run_cli("schmidt " + path_of("bad.state")).exit_code == 3);
  std::ofstream wrong_version(path_of("v2.state"));
  wrong_version << "{\"format\":\"eprkit/2\",\"kind\":\"pure_state\"}";
  wrong_version.close();
  CHECK(run_cli("schmidt " + path_of("v2.state")).exit_code == 3);
  // invariant violation on load: unflagged subnormalized density
  std::ofstream sub(path_of("sub.density"));
  sub << "{\"format\":\"eprkit/1\",\"kind\":\"density\",\"dims\":[2],"
         "\"data\":[[0.45,0],[0,0],[0,0],[0.45,0]],\"meta\":{}}";
  sub.close();
  run_cli("gen basis-vector --dim 2 --index 0 --out " + path_of("e0.vec"));
  CHECK(run_cli("measure " + path_of("sub.density") + " --vector " +
                path_of("e0.vec"))
            .exit_code == 1);
  CHECK(run_cli("gen werner --p 2 --out " + path_of("x")).exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

}  // TEST_SUITE
