#pragma once

#include <string>

#include "shadowlab/system.hpp"

namespace shadowlab {

/// Canonical JSON document for a system; byte-stable for a given system.
std::string save_system(const FiniteSystem& sys);
void save_system_file(const FiniteSystem& sys, const std::string& path);

/// Parses (strict schema, canonical rationals only) and, unless told not to,
/// validates. Throws ParseError / ValidationError.
FiniteSystem load_system(const std::string& json_text, bool validate = true);
FiniteSystem load_system_file(const std::string& path, bool validate = true);

}  // namespace shadowlab
