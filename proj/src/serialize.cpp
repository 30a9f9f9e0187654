// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT

#include "telfid/serialize.hpp"

#include <fstream>
#include <sstream>

namespace telfid {

namespace {

const char* const kNamedKinds[] = {
    "identity",          "bit_flip",
    "phase_flip",        "bit_phase_flip",
    "depolarizing",      "amplitude_damping",
    "generalized_amplitude_damping"};

bool is_named_kind(const std::string& kind) {
  for (const char* k : kNamedKinds)
    if (kind == k) return true;
  return false;
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<long long>(j.size()) !=
                           static_cast<long long>(rows) * cols)
    throw parse_error("matrix: expected " + std::to_string(rows * cols) +
                      " [re, im] entries");
  ComplexMatrix m(rows, cols);
  long long idx = 0;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw parse_error("matrix: entries must be [re, im] pairs");
    m(idx / cols, idx % cols) =
        Complex(e[0].get<double>(), e[1].get<double>());
    ++idx;
  }
  return m;
}

nlohmann::json channel_to_json(const KrausMap& m) {
  nlohmann::json j;
  j["label"] = m.label;
  j["dim"] = m.dim_in;
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& k : m.kraus) ops.push_back(matrix_to_json(k));
  j["kraus"] = std::move(ops);
  return j;
}

nlohmann::json named_channel_to_json(const std::string& kind,
                                     const std::vector<double>& params) {
  if (!is_named_kind(kind))
    throw parse_error("named channel: unknown kind '" + kind + "'");
  nlohmann::json j;
  j["kind"] = kind;
  if (params.size() == 1)
    j["param"] = params[0];
  else
    j["param"] = params;
  return j;
}

KrausMap channel_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("channel: expected a JSON object");
  try {
    if (j.contains("kind")) {
      const std::string kind = j.at("kind").get<std::string>();
      std::vector<double> params;
      const auto& p = j.at("param");
      if (p.is_number())
        params.push_back(p.get<double>());
      else if (p.is_array())
        for (const auto& e : p) params.push_back(e.get<double>());
      else
        throw parse_error("channel: 'param' must be a number or an array");
      return named_channel(kind, params);
    }
    const int dim = j.at("dim").get<int>();
    if (dim < 2) throw parse_error("channel: dim must be >= 2");
    const auto& ops = j.at("kraus");
    if (!ops.is_array() || ops.empty())
      throw parse_error("channel: 'kraus' must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& o : ops) kraus.push_back(matrix_from_json(o, dim, dim));
    std::string label = j.value("label", std::string());
    return make_kraus_map(std::move(kraus), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("channel: ") + e.what());
  }
}

nlohmann::json protocol_to_json(const ProtocolSpec& p) {
  nlohmann::json j;
  j["dim"] = p.basis.n;
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& u : p.basis.elements) basis.push_back(matrix_to_json(u));
  nlohmann::json corr = nlohmann::json::array();
  for (const auto& t : p.corrections) corr.push_back(matrix_to_json(t));
  j["basis"] = std::move(basis);
  j["corrections"] = std::move(corr);
  return j;
}

ProtocolSpec protocol_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("protocol: expected a JSON object");
  try {
    const int n = j.at("dim").get<int>();
    const auto& basis = j.at("basis");
    const auto& corr = j.at("corrections");
    if (!basis.is_array() || !corr.is_array() ||
        basis.size() != static_cast<size_t>(n) * n || basis.size() != corr.size())
      throw parse_error("protocol: expected n^2 basis and correction matrices");
    ProtocolSpec p;
    p.basis.n = n;
    for (const auto& u : basis)
      p.basis.elements.push_back(matrix_from_json(u, n, n));
    for (const auto& t : corr)
      p.corrections.push_back(matrix_from_json(t, n, n));
    validate_protocol(p);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("protocol: ") + e.what());
  }
}

KrausMap load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("invalid JSON in " + path + ": " + e.what());
  }
  return channel_from_json(j);
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

KrausMap channel_from_arg(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos && is_named_kind(arg.substr(0, colon))) {
    const std::string kind = arg.substr(0, colon);
    std::vector<double> params;
    std::stringstream ss(arg.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        size_t pos = 0;
        params.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw parse_error("named channel: bad parameter '" + tok + "'");
      }
    }
    if (params.empty())
      throw parse_error("named channel: missing parameter in '" + arg + "'");
    return named_channel(kind, params);
  }
  if (is_named_kind(arg)) return named_channel(arg, std::vector<double>{});
  return load_channel_file(arg);
}

}  // namespace telfid
