#pragma once

#include <vector>

#include "aliascalc/ast.hpp"
#include "aliascalc/parse.hpp"

namespace aliascalc {

/// Reference and type checks over a parsed program. Empty result means the
/// program is analyzable. Deterministic and stable over declaration order.
///
/// Duplicate declarations are reported by parse() (that is where the
/// originals are still visible); everything else lands here: unknown
/// classes in annotations, unknown variables/attributes/functions, arity
/// mismatches, and assignment to bare `Current`.
std::vector<Diagnostic> validate(const Program& p);

/// parse + validate in one step; diagnostics from both phases merged.
ParseResult load_program(const std::string& text);

}  // namespace aliascalc
