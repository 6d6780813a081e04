#include "aliascalc/ast.hpp"

namespace aliascalc {

namespace {
InstrPtr node(Instruction i) { return std::make_shared<const Instruction>(std::move(i)); }
}  // namespace

InstrPtr make_skip() {
  static const InstrPtr skip = node({});
  return skip;
}

InstrPtr make_seq(InstrPtr a, InstrPtr b) {
  Instruction i;
  i.kind = Instruction::Kind::Seq;
  i.first = std::move(a);
  i.second = std::move(b);
  return node(std::move(i));
}

InstrPtr make_if(InstrPtr then_branch, InstrPtr else_branch, SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::If;
  i.first = std::move(then_branch);
  i.second = std::move(else_branch);
  i.span = span;
  return node(std::move(i));
}

InstrPtr make_create(std::string var, SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::Create;
  i.name = std::move(var);
  i.span = span;
  return node(std::move(i));
}

InstrPtr make_forget(std::string var, SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::Forget;
  i.name = std::move(var);
  i.span = span;
  return node(std::move(i));
}

InstrPtr make_assign(Path lhs, Path rhs, SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::Assign;
  i.lhs = std::move(lhs);
  i.rhs = std::move(rhs);
  i.span = span;
  return node(std::move(i));
}

InstrPtr make_loop(InstrPtr body, SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::Loop;
  i.first = std::move(body);
  i.span = span;
  return node(std::move(i));
}

InstrPtr make_call(std::string fname, std::vector<Path> actuals, SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::Call;
  i.name = std::move(fname);
  i.actuals = std::move(actuals);
  i.span = span;
  return node(std::move(i));
}

InstrPtr make_qualified_call(Path receiver, std::string fname, std::vector<Path> actuals,
                             SourceSpan span) {
  Instruction i;
  i.kind = Instruction::Kind::QualifiedCall;
  i.lhs = std::move(receiver);
  i.name = std::move(fname);
  i.actuals = std::move(actuals);
  i.span = span;
  return node(std::move(i));
}

namespace {

// Sequencing is associative with the empty instruction as unit, so
// structural equality compares the flattened statement lists.
void flatten(const Instruction& i, std::vector<const Instruction*>& out) {
  if (i.kind == Instruction::Kind::Seq) {
    flatten(*i.first, out);
    flatten(*i.second, out);
    return;
  }
  if (i.kind == Instruction::Kind::Skip) return;
  out.push_back(&i);
}

}  // namespace

bool same_instruction(const Instruction& a, const Instruction& b) {
  std::vector<const Instruction*> fa, fb;
  flatten(a, fa);
  flatten(b, fb);
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const Instruction& x = *fa[i];
    const Instruction& y = *fb[i];
    if (x.kind != y.kind || x.name != y.name || !(x.lhs == y.lhs) ||
        !(x.rhs == y.rhs) || x.actuals != y.actuals)
      return false;
    if (x.first && !same_instruction(*x.first, *y.first)) return false;
    if (x.second && !same_instruction(*x.second, *y.second)) return false;
  }
  return true;
}

VarEnv callee_env(const VarEnv& caller, const ClassTable& ct, const FunctionDef& fn,
                  const std::vector<Path>& actuals) {
  VarEnv env = caller;
  for (std::size_t i = 0; i < fn.formals.size() && i < actuals.size(); ++i) {
    env.vars.erase(fn.formals[i]);
    if (auto cls = class_of_path(caller, ct, actuals[i])) env.vars[fn.formals[i]] = *cls;
  }
  for (const auto& [v, cls] : fn.locals.vars) env.vars[v] = cls;
  return env;
}

bool same_program(const Program& a, const Program& b) {
  if (a.class_table.classes != b.class_table.classes) return false;
  if (a.entry_env.vars != b.entry_env.vars) return false;
  if (a.function_order != b.function_order) return false;
  for (const auto& name : a.function_order) {
    const FunctionDef* fa = a.function(name);
    const FunctionDef* fb = b.function(name);
    if (!fa || !fb) return false;
    if (fa->formals != fb->formals || fa->locals.vars != fb->locals.vars) return false;
    if (!same_instruction(*fa->body, *fb->body)) return false;
  }
  return same_instruction(*a.main, *b.main);
}

}  // namespace aliascalc
