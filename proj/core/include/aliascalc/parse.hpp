#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aliascalc/ast.hpp"

namespace aliascalc {

struct Diagnostic {
  std::string code;
  std::string message;
  SourceSpan span;

  std::string render() const;
};

struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value() && diagnostics.empty(); }
};

/// Parses a source file of the surface syntax:
///
///   class NODE { attr next: NODE; }
///   fn f(x) { local y: NODE; y := x; }
///   program { local x: NODE; x := y; loop { x := x.next; } }
///
/// Whitespace-insensitive, `//` line comments, UTF-8. Errors carry
/// line/column and the expected tokens.
ParseResult parse(const std::string& text);

/// Parses a single dotted path such as "x.a.b" or "Current".
std::optional<Path> parse_path(const std::string& text);

}  // namespace aliascalc
