#pragma once

#include <string>

#include <json.hpp>

namespace eqha::toml_lite {

// Small TOML subset sufficient for the config files in data/: tables,
// arrays of tables, bare/quoted/dotted keys, strings, integers, booleans and
// (nested, multi-line) arrays. Throws std::runtime_error with a line number
// on malformed input.
nlohmann::json parse(const std::string& text);

}  // namespace eqha::toml_lite
