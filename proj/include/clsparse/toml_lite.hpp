#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

namespace clsparse {

// Reads the TOML subset used by experiment configs into a JSON object:
// `[table]` and `[table.sub]` headers, `key = value` pairs, basic strings,
// integers, floats, booleans, and (possibly multi-line) arrays of those.
// Inline tables, dates, literal and multi-line strings are not supported.
// Throws ParseError with the offending line.
nlohmann::json parse_toml(std::string_view text);
nlohmann::json load_toml(const std::filesystem::path& path);

}  // namespace clsparse
