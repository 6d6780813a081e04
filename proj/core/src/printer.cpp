#include "aliascalc/printer.hpp"

#include <sstream>

namespace aliascalc {

namespace {

void print_stmts(std::ostream& os, const Instruction& i, int indent);

std::string pad(int indent) { return std::string(indent * 2, ' '); }

std::string actuals_text(const std::vector<Path>& actuals) {
  std::string out = "(";
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    if (i) out += ", ";
    out += actuals[i].render();
  }
  return out + ")";
}

void print_stmt(std::ostream& os, const Instruction& i, int indent) {
  using K = Instruction::Kind;
  switch (i.kind) {
    case K::Skip:
    case K::Seq:
      print_stmts(os, i, indent);
      break;
    case K::Create:
      os << pad(indent) << "create " << i.name << ";\n";
      break;
    case K::Forget:
      os << pad(indent) << "forget " << i.name << ";\n";
      break;
    case K::Assign:
      os << pad(indent) << i.lhs.render() << " := " << i.rhs.render() << ";\n";
      break;
    case K::If:
      os << pad(indent) << "if then {\n";
      print_stmts(os, *i.first, indent + 1);
      os << pad(indent) << "} else {\n";
      print_stmts(os, *i.second, indent + 1);
      os << pad(indent) << "}\n";
      break;
    case K::Loop:
      os << pad(indent) << "loop {\n";
      print_stmts(os, *i.first, indent + 1);
      os << pad(indent) << "}\n";
      break;
    case K::Call:
      os << pad(indent) << "call " << i.name << actuals_text(i.actuals) << ";\n";
      break;
    case K::QualifiedCall:
      os << pad(indent) << i.lhs.render() << ".call " << i.name << actuals_text(i.actuals)
         << ";\n";
      break;
  }
}

void print_stmts(std::ostream& os, const Instruction& i, int indent) {
  if (i.kind == Instruction::Kind::Skip) return;
  if (i.kind == Instruction::Kind::Seq) {
    print_stmts(os, *i.first, indent);
    print_stmts(os, *i.second, indent);
    return;
  }
  print_stmt(os, i, indent);
}

void print_locals(std::ostream& os, const VarEnv& env, const std::vector<std::string>& order,
                  int indent) {
  for (const auto& var : order) {
    auto it = env.vars.find(var);
    if (it != env.vars.end())
      os << pad(indent) << "local " << var << ": " << it->second << ";\n";
  }
}

}  // namespace

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& [cls, attrs] : p.class_table.classes) {
    os << "class " << cls << " {\n";
    for (const auto& [attr, type] : attrs) os << "  attr " << attr << ": " << type << ";\n";
    os << "}\n";
  }
  for (const auto& name : p.function_order) {
    const FunctionDef& fn = *p.function(name);
    os << "fn " << name << "(";
    for (std::size_t i = 0; i < fn.formals.size(); ++i) {
      if (i) os << ", ";
      os << fn.formals[i];
    }
    os << ") {\n";
    print_locals(os, fn.locals, fn.local_order, 1);
    print_stmts(os, *fn.body, 1);
    os << "}\n";
  }
  os << "program {\n";
  print_locals(os, p.entry_env, p.entry_local_order, 1);
  print_stmts(os, *p.main, 1);
  os << "}\n";
  return os.str();
}

std::string print_instruction(const Instruction& i) {
  using K = Instruction::Kind;
  switch (i.kind) {
    case K::Skip: return "skip";
    case K::Seq:
      return print_instruction(*i.first) + "; " + print_instruction(*i.second);
    case K::Create: return "create " + i.name;
    case K::Forget: return "forget " + i.name;
    case K::Assign: return i.lhs.render() + " := " + i.rhs.render();
    case K::If:
      return "if then { " + print_instruction(*i.first) + " } else { " +
             print_instruction(*i.second) + " }";
    case K::Loop: return "loop { " + print_instruction(*i.first) + " }";
    case K::Call:
    case K::QualifiedCall: {
      std::string args = "(";
      for (std::size_t j = 0; j < i.actuals.size(); ++j) {
        if (j) args += ", ";
        args += i.actuals[j].render();
      }
      args += ")";
      if (i.kind == K::Call) return "call " + i.name + args;
      return i.lhs.render() + ".call " + i.name + args;
    }
  }
  return "?";
}

}  // namespace aliascalc
