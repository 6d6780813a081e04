// Command-line front end for the may-alias analyzer: analyze a program,
// query a pair of expressions, dump the machine trace, or cross-check the
// engine against the bounded direct evaluator.
//
// Exit codes: 0 success / affirmative, 1 negative verdict (query found no
// alias, check found counterexamples), 2 user error (bad file, bad flags,
// diagnostics), 3 environment error (I/O).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aliascalc/machine.hpp"
#include "aliascalc/oracle.hpp"
#include "aliascalc/printer.hpp"
#include "aliascalc/validate.hpp"

namespace {

using aliascalc::AliasRelation;
using aliascalc::AnalysisOptions;
using aliascalc::Program;
using aliascalc::Report;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUserError = 2;
constexpr int kExitEnvError = 3;

struct CommonOpts {
  std::string file;
  std::string mode = "overapprox";
  long cut_l = 100;
  std::size_t dot_depth = 1;
  std::string union_iterates = "true";
  long max_steps = 100000;
  bool json = false;
  bool trace = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("file", o.file, "program file (.alias)")->required();
  cmd->add_option("--mode", o.mode, "overapprox|cut")
      ->check(CLI::IsMember({"overapprox", "cut"}));
  cmd->add_option("--L", o.cut_l, "step budget in cut mode (default 100)");
  cmd->add_option("--dot-depth", o.dot_depth, "completion growth bound (default 1)");
  cmd->add_option("--union-iterates", o.union_iterates,
                  "fold pre-iteration relations into loop/recursion results (default true)")
      ->check(CLI::IsMember({"true", "false"}));
  cmd->add_option("--max-steps", o.max_steps, "safety step budget (default 100000)");
  cmd->add_flag("--json", o.json, "machine-readable output");
  cmd->add_flag("--trace", o.trace, "record the rewriting trace");
}

AnalysisOptions to_options(const CommonOpts& o) {
  AnalysisOptions opts;
  opts.mode = o.mode == "cut" ? AnalysisOptions::Mode::CutAtL
                              : AnalysisOptions::Mode::OverApprox;
  opts.cut_steps = o.cut_l;
  opts.dot_depth = o.dot_depth;
  opts.union_iterates = o.union_iterates == "true";
  opts.max_steps = o.max_steps;
  opts.trace = o.trace;
  return opts;
}

int load(const CommonOpts& o, std::optional<Program>& out,
         std::vector<aliascalc::Diagnostic>& diags) {
  std::ifstream in(o.file);
  if (!in) {
    std::cerr << "error: cannot open '" << o.file << "'\n";
    return kExitEnvError;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    std::cerr << "error: failed reading '" << o.file << "'\n";
    return kExitEnvError;
  }
  aliascalc::ParseResult r = aliascalc::load_program(buf.str());
  diags = r.diagnostics;
  if (!r.diagnostics.empty() || !r.program) return kExitUserError;
  out = std::move(r.program);
  return kExitOk;
}

nlohmann::ordered_json report_json(const CommonOpts& o, const Report& rep,
                                   const std::vector<aliascalc::Diagnostic>& diags) {
  nlohmann::ordered_json j;
  j["schemaVersion"] = "1";
  j["mode"] = o.mode;
  j["halted"] = aliascalc::halt_name(rep.halted);
  j["steps"] = rep.steps;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  std::vector<std::pair<std::string, std::string>> rendered;
  for (const auto& p : rep.final_relation.pairs())
    rendered.emplace_back(p.lhs.render(), p.rhs.render());
  std::sort(rendered.begin(), rendered.end());
  for (const auto& [l, r] : rendered) pairs.push_back({l, r});
  j["pairs"] = std::move(pairs);
  j["lassos"] = rep.lassos;
  nlohmann::ordered_json ds = nlohmann::ordered_json::array();
  for (const auto& d : diags) ds.push_back(d.render());
  j["diagnostics"] = std::move(ds);
  return j;
}

void print_diagnostics(const std::vector<aliascalc::Diagnostic>& diags,
                       const CommonOpts& o) {
  if (o.json) {
    nlohmann::ordered_json j;
    j["schemaVersion"] = "1";
    nlohmann::ordered_json ds = nlohmann::ordered_json::array();
    for (const auto& d : diags) ds.push_back(d.render());
    j["diagnostics"] = std::move(ds);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& d : diags) std::cerr << o.file << ":" << d.render() << "\n";
  }
}

int cmd_analyze(const CommonOpts& o) {
  std::optional<Program> p;
  std::vector<aliascalc::Diagnostic> diags;
  if (int rc = load(o, p, diags); rc != kExitOk) {
    print_diagnostics(diags, o);
    return rc;
  }
  Report rep = aliascalc::run(*p, to_options(o));
  if (o.json) {
    std::cout << report_json(o, rep, diags).dump(2) << "\n";
  } else {
    std::cout << "mode:     " << o.mode << "\n";
    std::cout << "halted:   " << aliascalc::halt_name(rep.halted) << "\n";
    std::cout << "steps:    " << rep.steps << "\n";
    std::cout << "lassos:   " << rep.lassos << "\n";
    std::cout << "relation: " << rep.final_relation.render() << "\n";
  }
  return kExitOk;
}

int cmd_query(const CommonOpts& o, const std::string& e1, const std::string& e2) {
  std::optional<Program> p;
  std::vector<aliascalc::Diagnostic> diags;
  if (int rc = load(o, p, diags); rc != kExitOk) {
    print_diagnostics(diags, o);
    return rc;
  }
  auto p1 = aliascalc::parse_path(e1);
  auto p2 = aliascalc::parse_path(e2);
  if (!p1 || !p2) {
    std::cerr << "error: expressions must be dotted paths like x.a.b\n";
    return kExitUserError;
  }
  for (const auto& path : {*p1, *p2}) {
    if (auto head = path.head(); head && !p->entry_env.vars.count(*head)) {
      std::cerr << "error: unknown variable '" << *head << "'\n";
      return kExitUserError;
    }
  }
  Report rep = aliascalc::run(*p, to_options(o));
  if (auto witness = aliascalc::may_alias_witness(rep.final_relation, *p1, *p2)) {
    std::cout << "MAY-ALIAS (witness " << aliascalc::render(*witness) << ")\n";
    return kExitOk;
  }
  std::cout << "NO-ALIAS-FOUND\n";
  return kExitNegative;
}

int cmd_trace(CommonOpts o) {
  o.trace = true;
  std::optional<Program> p;
  std::vector<aliascalc::Diagnostic> diags;
  if (int rc = load(o, p, diags); rc != kExitOk) {
    print_diagnostics(diags, o);
    return rc;
  }
  Report rep = aliascalc::run(*p, to_options(o));
  std::cout << aliascalc::render_trace(rep);
  std::cout << "final: " << rep.final_relation.render() << "\n";
  return kExitOk;
}

int cmd_check(const CommonOpts& o, int unroll, int rec_depth) {
  std::optional<Program> p;
  std::vector<aliascalc::Diagnostic> diags;
  if (int rc = load(o, p, diags); rc != kExitOk) {
    print_diagnostics(diags, o);
    return rc;
  }
  Report rep = aliascalc::run(*p, to_options(o));
  aliascalc::OracleBudget budget{unroll, rec_depth, o.dot_depth};
  auto missing = aliascalc::check_soundness(*p, budget, rep.final_relation);
  if (missing.empty()) {
    std::cout << "SOUND: no counterexamples at unroll=" << unroll
              << " recursion-depth=" << rec_depth << "\n";
    return kExitOk;
  }
  std::cout << "UNSOUND: " << missing.size() << " unmatched pair(s)\n";
  for (const auto& pair : missing)
    std::cout << "  missing " << aliascalc::render(pair) << "\n";
  return kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"may-alias analyzer for a small object-oriented language"};
  app.require_subcommand(1);

  CommonOpts analyze_opts, query_opts, trace_opts, check_opts;
  std::string query_e1, query_e2;
  int check_unroll = 5, check_rec_depth = 5;

  CLI::App* analyze = app.add_subcommand("analyze", "run the analysis and report the relation");
  add_common(analyze, analyze_opts);

  CLI::App* query = app.add_subcommand("query", "decide may-alias for two expressions");
  add_common(query, query_opts);
  query->add_option("e1", query_e1, "first expression")->required();
  query->add_option("e2", query_e2, "second expression")->required();

  CLI::App* trace = app.add_subcommand("trace", "print the rewriting trace");
  add_common(trace, trace_opts);

  CLI::App* check = app.add_subcommand("check", "compare against the bounded evaluator");
  add_common(check, check_opts);
  check->add_option("--unroll", check_unroll, "loop unroll bound (default 5)");
  check->add_option("--recursion-depth", check_rec_depth, "call nesting bound (default 5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUserError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_opts);
    if (query->parsed()) return cmd_query(query_opts, query_e1, query_e2);
    if (trace->parsed()) return cmd_trace(trace_opts);
    if (check->parsed()) return cmd_check(check_opts, check_unroll, check_rec_depth);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}
