#pragma once

#include <string>

#include <json.hpp>

namespace cayley_ising::cli {

using Json = nlohmann::ordered_json;

// Pretty-printed JSON with doubles at 17 significant digits; NaN and
// infinities become null.
std::string to_json_text(const Json& doc);

// One CSV line per element of rows (objects, nested keys joined with '.').
// The header is the union of keys in first-seen order. LF line endings.
std::string to_csv_text(const Json& rows);

std::string format_double(double x);

}  // namespace cayley_ising::cli
