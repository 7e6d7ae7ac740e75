#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "timewise/network.hpp"

namespace timewise {

/// Parses a JSON network file and validates it.
///
/// Syntax and schema problems raise ParseError (with line/column for syntax
/// errors); semantic problems raise ValidationError with the full report.
Network parse_network(std::string_view text);

/// Parses without validating, for callers that want the report themselves.
NetworkData parse_network_data(std::string_view text);

Network load_network(const std::filesystem::path& path);

/// Canonical text form: fixed key order, probabilities with 17 significant digits.
std::string serialize_network(const NetworkData& data);
inline std::string serialize_network(const Network& net) { return serialize_network(net.data()); }

/// "A=t,B=f" style evidence; the empty string is empty evidence.
Evidence parse_evidence(std::string_view text);

/// "A=t" style query.
Query parse_query(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace timewise
