#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aliascalc/path.hpp"
#include "aliascalc/types.hpp"

namespace aliascalc {

struct SourceSpan {
  int line = 0;
  int col = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Instruction;
using InstrPtr = std::shared_ptr<const Instruction>;

/// One node of the instruction tree. A single struct with a kind tag keeps
/// the traversals in the machine and the evaluator flat.
struct Instruction {
  enum class Kind { Skip, Seq, If, Create, Forget, Assign, Loop, Call, QualifiedCall };

  Kind kind = Kind::Skip;
  InstrPtr first;    // Seq: first; If: then branch; Loop: body
  InstrPtr second;   // Seq: second; If: else branch
  std::string name;  // Create/Forget: variable; Call/QualifiedCall: function
  Path lhs;          // Assign: target; QualifiedCall: receiver
  Path rhs;          // Assign: source
  std::vector<Path> actuals;  // Call/QualifiedCall
  SourceSpan span;
};

InstrPtr make_skip();
InstrPtr make_seq(InstrPtr a, InstrPtr b);
InstrPtr make_if(InstrPtr then_branch, InstrPtr else_branch, SourceSpan span = {});
InstrPtr make_create(std::string var, SourceSpan span = {});
InstrPtr make_forget(std::string var, SourceSpan span = {});
InstrPtr make_assign(Path lhs, Path rhs, SourceSpan span = {});
InstrPtr make_loop(InstrPtr body, SourceSpan span = {});
InstrPtr make_call(std::string fname, std::vector<Path> actuals, SourceSpan span = {});
InstrPtr make_qualified_call(Path receiver, std::string fname, std::vector<Path> actuals,
                             SourceSpan span = {});

bool same_instruction(const Instruction& a, const Instruction& b);

struct FunctionDef {
  std::string name;
  std::vector<std::string> formals;
  VarEnv locals;  // locals only; formals are bound per call
  std::vector<std::string> local_order;
  InstrPtr body;
  SourceSpan span;

  std::vector<Path> formal_paths() const {
    std::vector<Path> out;
    for (const auto& f : formals) out.push_back(Path::of(f));
    return out;
  }
};

struct Program {
  ClassTable class_table;
  std::map<std::string, FunctionDef> functions;
  std::vector<std::string> function_order;  // declaration order, for printing
  VarEnv entry_env;
  std::vector<std::string> entry_local_order;
  InstrPtr main;

  const FunctionDef* function(const std::string& name) const {
    auto it = functions.find(name);
    return it == functions.end() ? nullptr : &it->second;
  }
};

bool same_program(const Program& a, const Program& b);

/// Scope a function body runs in: the caller's bindings with each formal
/// re-bound to the class of its actual argument (dropped when the actual is
/// untypable) and the callee's locals layered on top.
VarEnv callee_env(const VarEnv& caller, const ClassTable& ct, const FunctionDef& fn,
                  const std::vector<Path>& actuals);

}  // namespace aliascalc
