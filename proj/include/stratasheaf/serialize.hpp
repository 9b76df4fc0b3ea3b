#pragma once

// JSON model documents (format_version "1"): serialization is
// deterministic (ordered keys), big integers are decimal strings and
// rationals are "p/q" strings, so nothing is ever rounded.

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "stratasheaf/stratspace.hpp"

namespace stratasheaf {

using Json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kFormatVersion = "1";

std::string int_to_string(const Int& v);
std::string rat_to_string(const Rat& v);
Int int_from_string(const std::string& s);    // throws SchemaError
Rat rat_from_string(const std::string& s);    // throws SchemaError

Json model_to_json(const StratifiedModel& m);

/// Parse and structurally validate a model document (shape, types,
/// format_version). Structural problems throw SchemaError with a JSON
/// pointer-style location; semantic problems are left to validate().
StratifiedModel model_from_json(const Json& doc);

std::string serialize_model(const StratifiedModel& m);  // canonical text
StratifiedModel parse_model(const std::string& text);

/// FNV-1a 64-bit digest of the canonical serialization, as fixed-width hex;
/// stable across runs and platforms.
std::string model_digest(const StratifiedModel& m);

Json validation_report_to_json(const ValidationReport& r);

}  // namespace stratasheaf
