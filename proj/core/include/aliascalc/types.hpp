#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "aliascalc/path.hpp"

namespace aliascalc {

/// Class name -> attribute name -> class name of the attribute's type.
struct ClassTable {
  std::map<std::string, std::map<std::string, std::string>> classes;

  bool has_class(const std::string& c) const { return classes.count(c) > 0; }
  const std::map<std::string, std::string>* attributes(const std::string& c) const {
    auto it = classes.find(c);
    return it == classes.end() ? nullptr : &it->second;
  }
};

/// Variable name -> class name. `current_class`, when set, is the class of
/// the `Current` object (the empty path). Function formals are deliberately
/// absent unless bound at call time; an unbound head simply makes a path
/// untypable, which disables domain-driven completion for it.
struct VarEnv {
  std::map<std::string, std::string> vars;
  std::optional<std::string> current_class;

  std::optional<std::string> class_of_var(const std::string& v) const {
    auto it = vars.find(v);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  }

  /// Callee scope layered over a caller scope: bindings in `inner` shadow.
  static VarEnv overlay(const VarEnv& outer, const VarEnv& inner);
};

/// Class of the object a path denotes, chasing attributes through the class
/// table. Star groups must map the running class back to itself (one body
/// traversal); anything else, including negative atoms and unbound heads,
/// makes the path untypable.
std::optional<std::string> class_of_path(const VarEnv& env, const ClassTable& ct,
                                         const Path& e);

/// Attribute names of the class of `e`; empty when `e` does not type-check.
std::set<std::string> attribute_domain(const VarEnv& env, const ClassTable& ct,
                                       const Path& e);

}  // namespace aliascalc
