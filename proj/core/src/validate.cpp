#include "aliascalc/validate.hpp"

namespace aliascalc {

namespace {

class Checker {
 public:
  Checker(const Program& p, std::vector<Diagnostic>& out) : p_(p), out_(out) {}

  void run() {
    check_class_table();
    check_env(p_.entry_env, "program block");
    for (const auto& name : p_.function_order) {
      const FunctionDef& fn = *p_.function(name);
      check_env(fn.locals, "function " + name);
      for (const auto& formal : fn.formals)
        if (fn.locals.vars.count(formal))
          emit("duplicate-declaration", "local '" + formal + "' shadows a formal", fn.span);
    }

    check_instr(*p_.main, p_.entry_env, nullptr);
    for (const auto& name : p_.function_order) {
      const FunctionDef& fn = *p_.function(name);
      check_instr(*fn.body, fn.locals, &fn);
    }
  }

 private:
  void emit(const std::string& code, const std::string& msg, SourceSpan span) {
    out_.push_back({code, msg, span});
  }

  void check_class_table() {
    for (const auto& [cls, attrs] : p_.class_table.classes)
      for (const auto& [attr, target] : attrs)
        if (!p_.class_table.has_class(target))
          emit("unknown-class",
               "attribute '" + attr + "' of class '" + cls + "' has unknown type '" +
                   target + "'",
               {});
  }

  void check_env(const VarEnv& env, const std::string& where) {
    for (const auto& [var, cls] : env.vars)
      if (!p_.class_table.has_class(cls))
        emit("unknown-class",
             "variable '" + var + "' in " + where + " has unknown type '" + cls + "'", {});
  }

  bool var_in_scope(const std::string& v, const VarEnv& env, const FunctionDef* fn) {
    if (env.vars.count(v)) return true;
    if (fn)
      for (const auto& formal : fn->formals)
        if (formal == v) return true;
    return false;
  }

  // Heads must be bound; attribute steps are checked only while the chain
  // stays typable (paths rooted at untyped formals pass through).
  void check_path(const Path& e, const VarEnv& env, const FunctionDef* fn, SourceSpan span) {
    const auto& segs = e.segments();
    if (segs.empty()) return;  // Current
    const std::string& head = segs.front().name;
    if (!var_in_scope(head, env, fn)) {
      emit("unknown-variable", "unknown variable '" + head + "'", span);
      return;
    }
    std::optional<std::string> cls = env.class_of_var(head);
    for (std::size_t i = 1; i < segs.size() && cls; ++i) {
      const auto* attrs = p_.class_table.attributes(*cls);
      if (!attrs) break;
      auto it = attrs->find(segs[i].name);
      if (it == attrs->end()) {
        emit("unknown-attribute",
             "class '" + *cls + "' has no attribute '" + segs[i].name + "'", span);
        return;
      }
      cls = it->second;
    }
  }

  void check_instr(const Instruction& i, const VarEnv& env, const FunctionDef* fn) {
    using K = Instruction::Kind;
    switch (i.kind) {
      case K::Skip:
        break;
      case K::Seq:
        check_instr(*i.first, env, fn);
        check_instr(*i.second, env, fn);
        break;
      case K::If:
        check_instr(*i.first, env, fn);
        check_instr(*i.second, env, fn);
        break;
      case K::Loop:
        check_instr(*i.first, env, fn);
        break;
      case K::Create:
      case K::Forget:
        if (!var_in_scope(i.name, env, fn))
          emit("unknown-variable", "unknown variable '" + i.name + "'", i.span);
        break;
      case K::Assign:
        if (i.lhs.empty()) {
          emit("assign-to-current", "the current object cannot be assigned", i.span);
        } else {
          check_path(i.lhs, env, fn, i.span);
        }
        check_path(i.rhs, env, fn, i.span);
        break;
      case K::QualifiedCall:
        check_path(i.lhs, env, fn, i.span);
        [[fallthrough]];
      case K::Call: {
        const FunctionDef* callee = p_.function(i.name);
        if (!callee) {
          emit("unknown-function", "unknown function '" + i.name + "'", i.span);
        } else if (callee->formals.size() != i.actuals.size()) {
          emit("arity-mismatch",
               "function '" + i.name + "' expects " +
                   std::to_string(callee->formals.size()) + " argument(s), got " +
                   std::to_string(i.actuals.size()),
               i.span);
        }
        for (const Path& a : i.actuals) check_path(a, env, fn, i.span);
        break;
      }
    }
  }

  const Program& p_;
  std::vector<Diagnostic>& out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& p) {
  std::vector<Diagnostic> out;
  Checker(p, out).run();
  return out;
}

ParseResult load_program(const std::string& text) {
  ParseResult r = parse(text);
  if (r.program) {
    auto more = validate(*r.program);
    r.diagnostics.insert(r.diagnostics.end(), more.begin(), more.end());
  }
  return r;
}

}  // namespace aliascalc
