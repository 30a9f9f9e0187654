// Copyright (c) 2026 the telfid authors
// SPDX-License-Identifier: MIT
//
// JSON encodings. A matrix is a flat row-major list of [re, im] pairs; a
// channel is {"label", "dim", "kraus": [matrix, ...]} or a named form
// {"kind", "param"}; a protocol is {"dim", "basis": [...], "corrections":
// [...]}. Doubles survive a dump/parse round trip bit-exactly.

#pragma once

#include "telfid/channels.hpp"
#include "telfid/protocol.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace telfid {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols);

nlohmann::json channel_to_json(const KrausMap& m);
// {"kind": ..., "param": number or [numbers]} for the named families.
nlohmann::json named_channel_to_json(const std::string& kind,
                                     const std::vector<double>& params);
// Accepts both the Kraus form and the named form.
KrausMap channel_from_json(const nlohmann::json& j);

nlohmann::json protocol_to_json(const ProtocolSpec& p);
ProtocolSpec protocol_from_json(const nlohmann::json& j);

KrausMap load_channel_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// CLI-style channel argument: "kind:param[,param]" for named channels,
// anything else is treated as a JSON file path.
KrausMap channel_from_arg(const std::string& arg);

}  // namespace telfid
