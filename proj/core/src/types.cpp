#include "aliascalc/types.hpp"

namespace aliascalc {

VarEnv VarEnv::overlay(const VarEnv& outer, const VarEnv& inner) {
  VarEnv out = outer;
  for (const auto& [k, v] : inner.vars) out.vars[k] = v;
  if (inner.current_class) out.current_class = inner.current_class;
  return out;
}

namespace {

std::optional<std::string> chase_attr(const ClassTable& ct, const std::string& cls,
                                      const std::string& attr) {
  const auto* attrs = ct.attributes(cls);
  if (!attrs) return std::nullopt;
  auto it = attrs->find(attr);
  if (it == attrs->end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<std::string> class_of_path(const VarEnv& env, const ClassTable& ct,
                                         const Path& e) {
  std::optional<std::string> cls;
  const auto& segs = e.segments();
  if (segs.empty()) return env.current_class;

  const Segment& head = segs.front();
  if (!head.is_atom() || head.negative) return std::nullopt;
  cls = env.class_of_var(head.name);
  if (!cls) return std::nullopt;

  for (std::size_t i = 1; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (s.is_atom()) {
      if (s.negative) return std::nullopt;
      cls = chase_attr(ct, *cls, s.name);
      if (!cls) return std::nullopt;
    } else {
      // A repeatable group is typable only if one traversal of its body is
      // class-preserving; then any number of repetitions is too.
      std::string c = *cls;
      for (const std::string& a : s.body) {
        auto next = chase_attr(ct, c, a);
        if (!next) return std::nullopt;
        c = *next;
      }
      if (c != *cls) return std::nullopt;
    }
  }
  return cls;
}

std::set<std::string> attribute_domain(const VarEnv& env, const ClassTable& ct,
                                       const Path& e) {
  std::set<std::string> out;
  auto cls = class_of_path(env, ct, e);
  if (!cls) return out;
  if (const auto* attrs = ct.attributes(*cls))
    for (const auto& [name, _] : *attrs) out.insert(name);
  return out;
}

}  // namespace aliascalc
