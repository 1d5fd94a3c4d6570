#pragma once

#include <string>

#include <json.hpp>

#include "entfid/entanglement.hpp"
#include "entfid/fidelity.hpp"

namespace entfid {

/// Channel file schema:
///   {"dim_in": int, "dim_out": int,
///    "kraus": [ [[[re,im], ...] per row] per operator ]}
/// Ragged rows and non-finite numbers are rejected with ParseError.
Channel channel_from_json(const nlohmann::json& j);
Channel channel_from_json_text(const std::string& text);
Channel load_channel(const std::string& path);  // ParseError also on I/O failure

nlohmann::json channel_to_json(const Channel& c);

nlohmann::json matrix_to_json(const ComplexMatrix& m);   // rows of [re, im] pairs
nlohmann::json ket_to_json(const BipartiteKet& k);

nlohmann::json validation_report_to_json(const ValidationReport& r);
nlohmann::json fidelity_report_to_json(const FidelityReport& r);
nlohmann::json entanglement_report_to_json(const EntanglementReport& r);

}  // namespace entfid
