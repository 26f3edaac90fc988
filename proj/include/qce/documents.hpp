#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "qce/expansion.hpp"
#include "qce/verifier.hpp"

namespace qce {

inline constexpr int kResultSchemaVersion = 1;
inline constexpr std::string_view kToolName = "qce";
std::string_view tool_version();

/// "fnv1a64:<16 hex digits>" of the bytes.
std::string content_hash(std::string_view bytes);

/// Common header: schema name and version, tool version, the run configuration
/// and hashes of every input file.
nlohmann::json document_header(std::string_view schema, const nlohmann::json& config, const nlohmann::json& inputs);

/// Expansion fields merged into `doc`. Timing values live under "timings".
void write_expansion(nlohmann::json& doc, const ExpansionResult& r);

/// Reads back the fields written by write_expansion (timings are not restored).
ExpansionResult read_expansion(const nlohmann::json& doc);

void write_trace(nlohmann::json& doc, const OptimizationTrace& trace);

/// Copy of `doc` with every "timings" object and "*_s" timing field removed.
nlohmann::json strip_timings(const nlohmann::json& doc);

}  // namespace qce
