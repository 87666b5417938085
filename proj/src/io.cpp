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

#include "eprkit/io.hpp"

#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

namespace eprkit {

using nlohmann::json;

namespace {

json base_document(const std::string& kind, MetaMap meta) {
  json j;
  j["format"] = FORMAT_VERSION;
  j["kind"] = kind;
  j["meta"] = json::object();
  for (auto& [k, v] : meta) j["meta"][k] = v;
  return j;
}

std::vector<Index> read_dims(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_array()) {
    throw ParseError("missing or malformed 'dims' field");
  }
  std::vector<Index> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<Index>() < 1) {
      throw ParseError("'dims' entries must be positive integers");
    }
    dims.push_back(d.get<Index>());
  }
  return dims;
}

Index dims_product(const std::vector<Index>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1},
                         std::multiplies<>());
}

void require_kind(const json& j, const std::string& kind) {
  if (j.value("kind", "") != kind) {
    throw ParseError("expected kind '" + kind + "', found '" +
                     j.value("kind", "<missing>") + "'");
  }
}

}  // namespace

json encode_matrix(const ComplexMatrix& m) {
  json data = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  return data;
}

ComplexMatrix decode_matrix(const json& data, Index rows, Index cols) {
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw ParseError("'data' length does not match the declared dims");
  }
  ComplexMatrix m(rows, cols);
  std::size_t i = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, ++i) {
      const auto& entry = data[i];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError("complex entries must be [re, im] number pairs");
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

Document::Document(json j) : body_(std::make_unique<json>(std::move(j))) {}
Document::~Document() = default;
Document::Document(Document&&) noexcept = default;
Document& Document::operator=(Document&&) noexcept = default;
Document::Document(const Document& other)
    : body_(std::make_unique<json>(*other.body_)) {}
Document& Document::operator=(const Document& other) {
  body_ = std::make_unique<json>(*other.body_);
  return *this;
}

Document Document::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());  // message carries line/column position
  }
  if (!j.is_object()) throw ParseError("top level must be a JSON object");
  const std::string version = j.value("format", "");
  if (version != FORMAT_VERSION) {
    throw ParseError("schema-version mismatch: expected '" +
                     std::string(FORMAT_VERSION) + "', found '" + version + "'");
  }
  return Document(std::move(j));
}

Document Document::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse(text);
}

void Document::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  out << dump(true) << '\n';
}

std::string Document::dump(bool pretty) const {
  return pretty ? body_->dump(2) : body_->dump();
}

std::string Document::kind() const { return body_->value("kind", ""); }

std::vector<Index> Document::dims() const { return read_dims(*body_); }

MetaMap Document::meta() const {
  MetaMap out;
  if (body_->contains("meta") && (*body_)["meta"].is_object()) {
    for (auto& [k, v] : (*body_)["meta"].items()) {
      out[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// Writers

Document Document::from_state(const PureState& psi, MetaMap meta) {
  json j = base_document("pure_state", std::move(meta));
  j["dims"] = psi.factor_dims();
  j["normalized"] = psi.normalized();
  j["data"] = encode_matrix(psi.amplitudes());
  return Document(std::move(j));
}

Document Document::from_density(const DensityOperator& rho,
                                std::vector<Index> factor_dims, MetaMap meta) {
  if (factor_dims.empty()) factor_dims = {rho.dim()};
  if (dims_product(factor_dims) != rho.dim()) {
    throw DimensionError("from_density: factor dims do not multiply to the dim");
  }
  json j = base_document("density", std::move(meta));
  j["dims"] = factor_dims;
  j["subnormalized"] = rho.subnormalized();
  j["data"] = encode_matrix(rho.matrix());
  return Document(std::move(j));
}

Document Document::from_operator(const ComplexMatrix& op, MetaMap meta) {
  json j = base_document("operator", std::move(meta));
  j["dims"] = {op.rows(), op.cols()};
  j["data"] = encode_matrix(op);
  return Document(std::move(j));
}

Document Document::from_operator_list(const std::vector<ComplexMatrix>& ops,
                                      MetaMap meta) {
  if (ops.empty()) throw ValueError("from_operator_list: empty list");
  json j = base_document("operator_list", std::move(meta));
  j["dims"] = {ops.front().rows(), ops.front().cols()};
  j["operators"] = json::array();
  for (const auto& op : ops) {
    if (op.rows() != ops.front().rows() || op.cols() != ops.front().cols()) {
      throw DimensionError("from_operator_list: inconsistent shapes");
    }
    j["operators"].push_back(encode_matrix(op));
  }
  return Document(std::move(j));
}

Document Document::from_map(const AntilinearMap& map, MetaMap meta) {
  json j = base_document("antilinear_map", std::move(meta));
  j["dims"] = {map.src_dim(), map.dst_dim()};
  j["data"] = encode_matrix(map.kmatrix());
  return Document(std::move(j));
}

Document Document::from_channel(const ChannelMap& channel, MetaMap meta) {
  json j = base_document("channel", std::move(meta));
  j["dims"] = {channel.src_dim(), channel.dst_dim()};
  j["kraus"] = json::array();
  for (const auto& s : channel.kraus()) {
    j["kraus"].push_back(encode_matrix(s.kmatrix()));
  }
  if (channel.origin()) j["origin"] = encode_matrix(*channel.origin());
  return Document(std::move(j));
}

Document Document::from_basis(const MeasurementBasis& basis, MetaMap meta) {
  json j = base_document("basis", std::move(meta));
  j["dims"] = {basis.dim_a(), basis.dim_b()};
  j["vectors"] = json::array();
  for (const auto& v : basis.vectors()) {
    j["vectors"].push_back(encode_matrix(v.amplitudes()));
  }
  return Document(std::move(j));
}

Document Document::report(const std::string& report_type, json body,
                          MetaMap meta) {
  json j = base_document("report", std::move(meta));
  j["dims"] = json::array();
  j["report_type"] = report_type;
  j["body"] = std::move(body);
  return Document(std::move(j));
}

// --------------------------------------------------------------------------
// Readers. Domain invariants are enforced by the type constructors, so a
// tampered file surfaces as InvariantViolation with the violated name.

PureState Document::to_state() const {
  require_kind(*body_, "pure_state");
  const auto dims = read_dims(*body_);
  const Index total = dims_product(dims);
  ComplexVector amps = decode_matrix((*body_)["data"], total, 1);
  if (body_->value("normalized", true)) {
    return PureState(dims, std::move(amps));
  }
  return PureState::unnormalized(dims, std::move(amps));
}

DensityOperator Document::to_density() const {
  require_kind(*body_, "density");
  const Index d = dims_product(read_dims(*body_));
  ComplexMatrix m = decode_matrix((*body_)["data"], d, d);
  return DensityOperator(std::move(m), body_->value("subnormalized", false));
}

ComplexMatrix Document::to_operator() const {
  require_kind(*body_, "operator");
  const auto dims = read_dims(*body_);
  if (dims.size() != 2) throw ParseError("operator dims must be [rows, cols]");
  return decode_matrix((*body_)["data"], dims[0], dims[1]);
}

std::vector<ComplexMatrix> Document::to_operator_list() const {
  require_kind(*body_, "operator_list");
  const auto dims = read_dims(*body_);
  if (dims.size() != 2) throw ParseError("operator_list dims must be [rows, cols]");
  if (!body_->contains("operators") || !(*body_)["operators"].is_array()) {
    throw ParseError("operator_list needs an 'operators' array");
  }
  std::vector<ComplexMatrix> ops;
  for (const auto& entry : (*body_)["operators"]) {
    ops.push_back(decode_matrix(entry, dims[0], dims[1]));
  }
  return ops;
}

AntilinearMap Document::to_map() const {
  require_kind(*body_, "antilinear_map");
  const auto dims = read_dims(*body_);
  if (dims.size() != 2) throw ParseError("antilinear_map dims must be [src, dst]");
  return AntilinearMap(decode_matrix((*body_)["data"], dims[1], dims[0]));
}

ChannelMap Document::to_channel() const {
  require_kind(*body_, "channel");
  const auto dims = read_dims(*body_);
  if (dims.size() != 2) throw ParseError("channel dims must be [src, dst]");
  if (!body_->contains("kraus") || !(*body_)["kraus"].is_array()) {
    throw ParseError("channel needs a 'kraus' array");
  }
  std::vector<AntilinearMap> kraus;
  for (const auto& entry : (*body_)["kraus"]) {
    kraus.emplace_back(decode_matrix(entry, dims[1], dims[0]));
  }
  std::optional<ComplexMatrix> origin;
  if (body_->contains("origin")) {
    origin = decode_matrix((*body_)["origin"], dims[0] * dims[1],
                           dims[0] * dims[1]);
  }
  return ChannelMap(dims[0], dims[1], std::move(kraus), std::move(origin));
}

MeasurementBasis Document::to_basis() const {
  require_kind(*body_, "basis");
  const auto dims = read_dims(*body_);
  if (dims.size() != 2) throw ParseError("basis dims must be [dim_a, dim_b]");
  if (!body_->contains("vectors") || !(*body_)["vectors"].is_array()) {
    throw ParseError("basis needs a 'vectors' array");
  }
  std::vector<PureState> vectors;
  for (const auto& entry : (*body_)["vectors"]) {
    vectors.emplace_back(std::vector<Index>{dims[0], dims[1]},
                         ComplexVector(decode_matrix(entry, dims[0] * dims[1], 1)));
  }
  return MeasurementBasis(dims[0], dims[1], std::move(vectors));
}

}  // namespace eprkit
