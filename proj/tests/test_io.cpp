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
#include <filesystem>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "eprkit/io.hpp"
#include "eprkit/smap.hpp"
#include "eprkit/states.hpp"

using namespace eprkit;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("state round trip is bit exact") {
  const PureState bell = bell_state(0);
  const auto path = temp_file("eprkit_io_bell.state");
  Document::from_state(bell, {{"seed", "0"}}).save(path);
  const PureState back = Document::load(path).to_state();
  CHECK((back.amplitudes() - bell.amplitudes()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK(back.factor_dims() == bell.factor_dims());
  std::filesystem::remove(path);
}

TEST_CASE("irrational amplitudes survive the text format unchanged") {
  Rng rng{Seed{601}};
  for (int t = 0; t < 20; ++t) {
    const PureState psi = rng.pure_state({3, 4});
    const std::string text = Document::from_state(psi).dump();
    const PureState back = Document::parse(text).to_state();
    CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("density round trip keeps factor dims and flags") {
  Rng rng{Seed{602}};
  const DensityOperator rho = rng.density(6, 3);
  const std::string text = Document::from_density(rho, {2, 3}).dump();
  const Document doc = Document::parse(text);
  CHECK(doc.dims() == std::vector<Index>{2, 3});
  const DensityOperator back = doc.to_density();
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
  CHECK_FALSE(back.subnormalized());
}

TEST_CASE("a subnormalized density needs its flag") {
  const ComplexMatrix m = 0.9 * 0.5 * ComplexMatrix::Identity(2, 2);
  const DensityOperator sub(m, true);
  const std::string good = Document::from_density(sub).dump();
  CHECK(Document::parse(good).to_density().subnormalized());

  // strip the flag: the load must report the violated invariant
  nlohmann::json j = nlohmann::json::parse(good);
  j["subnormalized"] = false;
  bool caught = false;
  try {
    Document::parse(j.dump()).to_density();
  } catch (const InvariantViolation& e) {
    caught = true;
    CHECK(e.invariant() == "unit_trace");
  }
  CHECK(caught);
}

TEST_CASE("antilinear map and channel round trips") {
  Rng rng{Seed{603}};
  const PureState psi = rng.pure_state({2, 3});
  const AntilinearMap s = smap_from_vector(psi, SmapDirection::BA);
  const AntilinearMap s_back =
      Document::parse(Document::from_map(s).dump()).to_map();
  CHECK(max_abs_diff(s_back.kmatrix(), s.kmatrix()) == 0.0);
  CHECK(s_back.src_dim() == 2);
  CHECK(s_back.dst_dim() == 3);

  const ChannelMap channel =
      channel_from_density(rng.density(6, 4), 2, 3);
  const ChannelMap c_back =
      Document::parse(Document::from_channel(channel).dump()).to_channel();
  REQUIRE(c_back.kraus().size() == channel.kraus().size());
  for (std::size_t i = 0; i < channel.kraus().size(); ++i) {
    CHECK(max_abs_diff(c_back.kraus()[i].kmatrix(),
                       channel.kraus()[i].kmatrix()) == 0.0);
  }
  REQUIRE(c_back.origin().has_value());
  CHECK(max_abs_diff(*c_back.origin(), *channel.origin()) == 0.0);
}

TEST_CASE("basis and operator list round trips") {
  const MeasurementBasis basis = bell_basis();
  const MeasurementBasis b_back =
      Document::parse(Document::from_basis(basis).dump()).to_basis();
  CHECK(b_back.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK((b_back.vector(i).amplitudes() - basis.vector(i).amplitudes())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }

  const auto corrections = derive_bell_corrections();
  const auto ops = Document::parse(
                       Document::from_operator_list(corrections).dump())
                       .to_operator_list();
  REQUIRE(ops.size() == corrections.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    CHECK(max_abs_diff(ops[i], corrections[i]) == 0.0);
  }
}

TEST_CASE("schmidt data written from a loaded state reconstructs it") {
  Rng rng{Seed{604}};
  const PureState psi = rng.pure_state({2, 3});
  const std::string text = Document::from_state(psi).dump();
  const PureState loaded = Document::parse(text).to_state();
  const SchmidtDecomposition sd = schmidt(loaded);
  // persist the factors, reload, reassemble
  const std::string left = Document::from_operator(sd.left_vectors).dump();
  const std::string right = Document::from_operator(sd.right_vectors).dump();
  const ComplexMatrix l = Document::parse(left).to_operator();
  const ComplexMatrix r = Document::parse(right).to_operator();
  ComplexVector rebuilt = ComplexVector::Zero(6);
  for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
    for (Index a = 0; a < 2; ++a)
      for (Index b = 0; b < 3; ++b)
        rebuilt(a * 3 + b) += std::sqrt(sd.coefficients[j]) *
                              l(a, static_cast<Index>(j)) *
                              r(b, static_cast<Index>(j));
  }
  CHECK((rebuilt - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parse errors carry position information") {
  bool caught = false;
  try {
    Document::parse("{ not json");
  } catch (const ParseError& e) {
    caught = true;
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  CHECK(caught);
}

TEST_CASE("version and kind mismatches are rejected") {
  CHECK_THROWS_AS(Document::parse("{\"format\":\"eprkit/2\",\"kind\":\"x\"}"),
                  ParseError);
  CHECK_THROWS_AS(Document::parse("{\"kind\":\"pure_state\"}"), ParseError);
  const std::string state = Document::from_state(bell_state(0)).dump();
  CHECK_THROWS_AS(Document::parse(state).to_density(), ParseError);
  CHECK_THROWS_AS(Document::load("/nonexistent/file.state"), ParseError);
}

TEST_CASE("malformed payloads are parse errors") {
  CHECK_THROWS_AS(
      Document::parse(
          "{\"format\":\"eprkit/1\",\"kind\":\"pure_state\",\"dims\":[2,2],"
          "\"data\":[[1,0]]}")
          .to_state(),
      ParseError);
  CHECK_THROWS_AS(
      Document::parse(
          "{\"format\":\"eprkit/1\",\"kind\":\"pure_state\",\"dims\":[2,0],"
          "\"data\":[]}")
          .to_state(),
      ParseError);
}

}  // TEST_SUITE
