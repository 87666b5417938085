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

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eprkit/channel.hpp"
#include "eprkit/core.hpp"
#include "eprkit/teleport.hpp"

namespace eprkit {

inline constexpr const char* FORMAT_VERSION = "eprkit/1";

using MetaMap = std::map<std::string, std::string>;

/// One serialized object in the eprkit/1 text format: JSON with fields
/// format / kind / dims / payload / meta, complex entries as [re, im]
/// pairs, matrices flattened row-major. Round-trips of finite doubles are
/// bit-exact.
///
/// kinds: pure_state, density, operator, operator_list, antilinear_map,
/// channel, basis, report.
class Document {
 public:
  ~Document();
  Document(Document&&) noexcept;
  Document& operator=(Document&&) noexcept;
  Document(const Document&);
  Document& operator=(const Document&);

  static Document load(const std::filesystem::path& path);
  static Document parse(const std::string& text);

  void save(const std::filesystem::path& path) const;
  std::string dump(bool pretty = false) const;

  std::string kind() const;
  std::vector<Index> dims() const;
  MetaMap meta() const;
  const nlohmann::json& raw() const { return *body_; }

  static Document from_state(const PureState& psi, MetaMap meta = {});
  static Document from_density(const DensityOperator& rho,
                               std::vector<Index> factor_dims = {},
                               MetaMap meta = {});
  static Document from_operator(const ComplexMatrix& op, MetaMap meta = {});
  static Document from_operator_list(const std::vector<ComplexMatrix>& ops,
                                     MetaMap meta = {});
  static Document from_map(const AntilinearMap& map, MetaMap meta = {});
  static Document from_channel(const ChannelMap& channel, MetaMap meta = {});
  static Document from_basis(const MeasurementBasis& basis, MetaMap meta = {});
  static Document report(const std::string& report_type,
                         nlohmann::json body, MetaMap meta = {});

  PureState to_state() const;
  DensityOperator to_density() const;
  ComplexMatrix to_operator() const;
  std::vector<ComplexMatrix> to_operator_list() const;
  AntilinearMap to_map() const;
  ChannelMap to_channel() const;
  MeasurementBasis to_basis() const;

 private:
  explicit Document(nlohmann::json j);

  std::unique_ptr<nlohmann::json> body_;
};

/// Complex matrix <-> flat row-major [re, im] pair list.
nlohmann::json encode_matrix(const ComplexMatrix& m);
ComplexMatrix decode_matrix(const nlohmann::json& data, Index rows,
                            Index cols);

}  // namespace eprkit
