#pragma once

#include <map>
#include <string>
#include <vector>

#include "aliascalc/ast.hpp"
#include "aliascalc/dotcomplete.hpp"
#include "aliascalc/lasso.hpp"
#include "aliascalc/relation.hpp"

namespace aliascalc {

struct AnalysisOptions {
  enum class Mode { OverApprox, CutAtL };

  Mode mode = Mode::OverApprox;
  long cut_steps = 100;       // CutAtL only
  std::size_t dot_depth = 1;  // extra growth allowed per completion
  long max_steps = 100000;    // safety fuse in OverApprox mode
  // Fold the relation seen before each loop iteration / recursive re-entry
  // into the construct's final result. Off reproduces the literal
  // replace-then-approximate rule sequence.
  bool union_iterates = true;
  bool trace = false;
};

/// One entry of the continuation stack: either an instruction or one of the
/// markers the structured rules leave behind to be consumed on the way out.
struct KItem {
  enum class Kind { Instr, EndThen, EndElse, LoopMark, CallMark, QCallMark };

  Kind kind;
  InstrPtr instr;     // Instr: the instruction; EndThen: pending else branch;
                      // LoopMark: the loop body
  std::string fname;  // CallMark / QCallMark

  std::string render() const;
};

struct TraceEntry {
  long step = 0;
  std::string rule;
  std::string al;
  std::string k_top;
  std::string backtracking;
};

struct MachineConfig {
  std::vector<KItem> k;  // back() is the top
  AliasRelation al;

  struct TeFrame {
    AliasRelation original;
    AliasRelation then_result;
  };
  struct LoopFrame {
    AliasRelation stored;
    InstrPtr body;
    std::vector<AliasRelation> iterates;  // relation before each run of the body
    int qdepth = 0;
  };
  struct CallFrame {
    AliasRelation stored;  // relation at entry, before argument renaming
    std::vector<Path> actuals;
    std::size_t log_pos = 0;
  };

  std::vector<TeFrame> bkt_te;
  std::vector<LoopFrame> bkt_l;
  std::map<std::string, std::vector<CallFrame>> bkt_cf;
  std::map<std::string, std::vector<Path>> bkt_qf;

  std::vector<VarEnv> env_stack;
  int qcall_depth = 0;
  // Pre-entry relations of every call, for folding recursion iterates into
  // the approximated result.
  std::vector<std::pair<int, AliasRelation>> call_log;

  long steps = 0;
  int lassos = 0;

  bool done() const { return k.empty(); }
  const VarEnv& env() const { return env_stack.back(); }
};

struct Report {
  enum class Halt { Converged, StepBudgetExhausted };

  AliasRelation final_relation;
  Halt halted = Halt::Converged;
  long steps = 0;
  int lassos = 0;
  bool trace_enabled = false;
  std::vector<TraceEntry> trace;
};

/// Initial configuration: main on the continuation, empty alias relation,
/// empty back-tracking cells. Throws std::invalid_argument if the program
/// does not validate.
MachineConfig init(const Program& p, const AnalysisOptions& opts);

/// Applies exactly one rule, selected by the top of the continuation and the
/// cell state. Appends a trace entry when tracing.
void step(MachineConfig& c, const Program& p, const AnalysisOptions& opts,
          std::vector<TraceEntry>* trace);

/// Runs to an empty continuation or until the step budget halts the
/// rewriting (L in cut mode, max_steps otherwise).
Report run(const Program& p, const AnalysisOptions& opts);

/// Human-readable rendering of a recorded trace; one block per step.
std::string render_trace(const Report& rep);

const char* mode_name(AnalysisOptions::Mode m);
const char* halt_name(Report::Halt h);

}  // namespace aliascalc
