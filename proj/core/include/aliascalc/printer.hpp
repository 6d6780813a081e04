#pragma once

#include <string>

#include "aliascalc/ast.hpp"

namespace aliascalc {

/// Canonical source rendering; parse(print_program(p)) reproduces p.
std::string print_program(const Program& p);

/// Single-line rendering of one instruction, used in traces.
std::string print_instruction(const Instruction& i);

}  // namespace aliascalc
