// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qopkit/channels.hpp"
#include "qopkit/linalg.hpp"
#include "qopkit/reversal.hpp"

namespace qopkit {

using Json = nlohmann::json;

// Matrix encoding shared by all file formats: row-major rows of [re, im]
// pairs.

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError(where + ": expected matrix rows");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError(where + ": ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(where + ": entries must be [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

/// Channel-spec document: { "dim": D, "kraus": [matrix, ...] } with an
/// optional "env_model" block.
struct ChannelSpec {
  QuantumOperation op;
  std::optional<EnvironmentModel> env_model;
};

inline ChannelSpec channel_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("channel: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("channel: missing integer field \"dim\"");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError("channel: missing non-empty array field \"kraus\"");
  const auto dim = j["dim"].get<Eigen::Index>();
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < j["kraus"].size(); ++i) {
    Matrix k = matrix_from_json(j["kraus"][i], "channel.kraus[" + std::to_string(i) + "]");
    if (k.rows() != dim || k.cols() != dim)
      throw ParseError("channel.kraus[" + std::to_string(i) + "]: wrong dimension");
    kraus.push_back(std::move(k));
  }
  ChannelSpec spec{QuantumOperation(std::move(kraus)), std::nullopt};
  if (j.contains("env_model")) {
    const Json& e = j["env_model"];
    EnvironmentModel m;
    m.system_dim = dim;
    m.unitary = matrix_from_json(e.at("unitary"), "env_model.unitary");
    m.env_state = matrix_from_json(e.at("env_state"), "env_model.env_state");
    m.env_dim = m.env_state.rows();
    const Matrix basis = matrix_from_json(e.at("observation_basis"), "env_model.observation_basis");
    for (Eigen::Index c = 0; c < basis.cols(); ++c) m.observation.push_back(basis.col(c));
    m.validate();
    spec.env_model = std::move(m);
  }
  return spec;
}

inline Json channel_to_json(const QuantumOperation& op) {
  Json j;
  j["dim"] = op.dim();
  Json kraus = Json::array();
  for (const Matrix& k : op.kraus()) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  return j;
}

/// Code-subspace document: { "physical_dim", "logical_dim", "isometry" }.
inline CodeSubspace code_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("code: expected a JSON object");
  for (const char* field : {"physical_dim", "logical_dim", "isometry"})
    if (!j.contains(field)) throw ParseError(std::string("code: missing field \"") + field + "\"");
  const Matrix iso = matrix_from_json(j["isometry"], "code.isometry");
  if (iso.rows() != j["physical_dim"].get<Eigen::Index>() ||
      iso.cols() != j["logical_dim"].get<Eigen::Index>())
    throw ParseError("code.isometry: shape disagrees with declared dimensions");
  return CodeSubspace(iso);
}

inline Json code_to_json(const CodeSubspace& code) {
  Json j;
  j["physical_dim"] = code.physical_dim();
  j["logical_dim"] = code.logical_dim();
  j["isometry"] = matrix_to_json(code.isometry());
  return j;
}

/// State document: { "dim": D, "matrix": ... }.
inline DensityOperator state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("matrix"))
    throw ParseError("state: expected object with \"dim\" and \"matrix\"");
  Matrix m = matrix_from_json(j["matrix"], "state.matrix");
  if (m.rows() != j["dim"].get<Eigen::Index>())
    throw ParseError("state.matrix: shape disagrees with declared dim");
  return DensityOperator((m + Matrix(m.adjoint())) * 0.5);
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace qopkit
