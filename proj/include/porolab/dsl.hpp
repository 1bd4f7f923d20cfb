#pragma once

#include "porolab/errors.hpp"
#include "porolab/set.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace porolab {

/// Parse a whole source file (one or more `set NAME { ... }` definitions,
/// `#` comments). Throws ParseError with line/column on syntax or semantic
/// violations (e.g. a geometric ratio outside (0,1)).
std::vector<SetSpec> parse_specs(std::string_view text);

/// Parse a source containing exactly one set definition.
SetSpec parse_spec(std::string_view text);

/// Canonical text form; parse_spec(print_spec(s)) == s.
std::string print_spec(const SetSpec& spec);
std::string print_specs(const std::vector<SetSpec>& specs);

}  // namespace porolab
