// ipcf — command-line driver: check / run / trace / oracle / repl.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ipcf/develop.hpp"
#include "ipcf/generate.hpp"
#include "ipcf/ops.hpp"
#include "ipcf/parser.hpp"
#include "ipcf/prelude.hpp"
#include "ipcf/printer.hpp"
#include "ipcf/reduce.hpp"
#include "ipcf/serialize.hpp"
#include "ipcf/typecheck.hpp"

namespace {

using namespace ipcf;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;     // parse or type error, oracle violation
constexpr int kExitNoFuel = 2;

struct Config {
  int fuel = kDefaultFuel;
  std::string ops = "tick,done,is-app,retract";
  bool noPrelude = false;
  bool json = false;
  std::uint64_t seed = 0;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string pathString(const Path& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

// Prelude definitions, honoring IPCF_PRELUDE and --no-prelude.
std::vector<ElabDef> baseDefs(const Config& cfg) {
  if (cfg.noPrelude) return {};
  if (const char* env = std::getenv("IPCF_PRELUDE")) {
    Program p = elaborate(parseFile(readFile(env)));
    for (ElabDef& d : p.defs) d.fromBase = true;
    return std::move(p.defs);
  }
  return preludeDefs();
}

struct LoadedFile {
  Program program;
  std::shared_ptr<const OpRegistry> reg;
};

LoadedFile loadFile(const std::string& path, const Config& cfg) {
  auto reg = makeBuiltinRegistry(OpSelection::fromList(cfg.ops));
  Program p = elaborate(parseFile(readFile(path)), baseDefs(cfg));
  return LoadedFile{std::move(p), std::move(reg)};
}

void reportParseError(const ParseError& e, const Config& cfg) {
  if (cfg.json)
    std::cerr << parseErrorToJson(e) << "\n";
  else
    std::cerr << e.what() << "\n";
}

void reportTypeError(const TypeError& e, int line, int col, const Config& cfg) {
  if (cfg.json)
    std::cerr << typeErrorToJson(e, line, col) << "\n";
  else
    std::cerr << "type error at " << line << ":" << col << ": " << e.what() << "\n";
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmdCheck(const std::string& path, const Config& cfg) {
  LoadedFile f = loadFile(path, cfg);
  for (const ElabDef& d : f.program.defs) {
    if (d.fromBase) continue;
    try {
      check(TypingContext{}, d.expanded, d.declared, *f.reg);
    } catch (const TypeError& e) {
      reportTypeError(e, d.line, d.col, cfg);
      return kExitError;
    }
    std::cout << d.name << " : " << printType(d.declared) << "\n";
  }
  if (f.program.main) {
    try {
      Type ty = [&] {
        if (f.program.mainType) {
          check(TypingContext{}, *f.program.main, *f.program.mainType, *f.reg);
          return *f.program.mainType;
        }
        return infer(TypingContext{}, *f.program.main, *f.reg).first;
      }();
      std::cout << "main : " << printType(ty) << "\n";
    } catch (const TypeError& e) {
      reportTypeError(e, f.program.mainLine, f.program.mainCol, cfg);
      return kExitError;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// run / trace
// ---------------------------------------------------------------------------

std::optional<Trace> runMain(const LoadedFile& f, const Config& cfg) {
  if (!f.program.main) {
    std::cerr << "no main term in file\n";
    return std::nullopt;
  }
  try {  // type errors abort the run
    if (f.program.mainType)
      check(TypingContext{}, *f.program.main, *f.program.mainType, *f.reg);
    else
      infer(TypingContext{}, *f.program.main, *f.reg);
  } catch (const TypeError& e) {
    reportTypeError(e, f.program.mainLine, f.program.mainCol, cfg);
    return std::nullopt;
  }
  return normalize(*f.program.main, cfg.fuel, *f.reg);
}

int cmdRun(const std::string& path, const Config& cfg) {
  LoadedFile f = loadFile(path, cfg);
  auto trace = runMain(f, cfg);
  if (!trace) return kExitError;
  if (trace->status == TraceStatus::FuelExhausted) {
    std::cerr << "fuel exhausted after " << trace->steps.size() << " steps\n";
    return kExitNoFuel;
  }
  std::cout << printTerm(trace->final()) << "\n";
  return kExitOk;
}

int cmdTrace(const std::string& path, const Config& cfg) {
  LoadedFile f = loadFile(path, cfg);
  auto trace = runMain(f, cfg);
  if (!trace) return kExitError;
  if (cfg.json) {
    std::cout << traceToJson(*trace) << "\n";
  } else {
    std::cout << "initial: " << printTerm(trace->initial) << "\n";
    int i = 1;
    for (const Step& s : trace->steps)
      std::cout << "  " << i++ << ". " << stepRuleName(s.rule) << " @ "
                << pathString(s.path) << " -> " << printTerm(s.result) << "\n";
    if (trace->status == TraceStatus::Normal)
      std::cout << "normal form: " << printTerm(trace->final()) << "\n";
    else
      std::cout << "fuel exhausted after " << trace->steps.size() << " steps\n";
  }
  return trace->status == TraceStatus::Normal ? kExitOk : kExitNoFuel;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleOpts {
  int seeds = 200;
  int depth = 6;
  std::size_t limit = kMembershipLimit;
  std::string corpus = "all";
  std::string out;
};

void dumpViolation(const OracleViolation& v, const std::string& dir, int index) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream f(dir + "/violation-" + std::to_string(index) + ".ipcf");
  f << "-- confluence violation artifact\n"
    << "-- source:      " << printTerm(v.source) << "\n"
    << "-- left (p):    " << printTerm(v.left) << "\n"
    << "-- right (q):   " << printTerm(v.right) << "\n"
    << "-- development: " << printTerm(v.development) << "\n"
    << "main = " << printTerm(v.source) << ";\n";
}

// Replays a parallel-reduction witness as single steps, checking each one is
// a real stepAll member; returns false on the first mismatch.
bool replayWitness(const Term& from, const ParallelWitness& w, const OpRegistry& reg) {
  Term cur = from;
  for (const Step& st : w.steps) {
    bool found = false;
    for (const Step& o : stepAll(cur, reg)) {
      if (o.path == st.path && o.rule == st.rule && alphaEq(o.result, st.result)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
    cur = st.result;
  }
  return alphaEq(cur, w.target);
}

int oracleCorpus(Corpus corpus, const OracleOpts& opts, const Config& cfg) {
  auto reg = makeBuiltinRegistry(OpSelection::fromList(cfg.ops));
  int violations = 0, pairs = 0, truncated = 0, inconclusive = 0;
  for (int i = 0; i < opts.seeds; ++i) {
    GenConfig gc;
    gc.depth = opts.depth;
    gc.seed = cfg.seed + std::uint64_t(i);
    gc.corpus = corpus;
    GeneratedTerm g = [&] {
      try {
        return generateWellTyped(gc, *reg);
      } catch (const GenerationExhausted&) {
        return GeneratedTerm{Term::nat(0), Type::nat()};
      }
    }();

    auto single = stepAll(g.term, *reg);
    ParallelOracle oracle(*reg, opts.limit);

    // lower sandwich: every single step is a parallel step
    bool rootTruncated = false;
    for (const Step& s : single) {
      auto m = oracle.member(g.term, s.result);
      if (!m.known) {
        ++inconclusive;  // capped enumeration cannot witness membership
        rootTruncated = true;
      } else if (!m.holds) {
        ++violations;
        std::cerr << "single step escapes parallel reduction\n  term: "
                  << printTerm(g.term) << "\n  step: " << printTerm(s.result)
                  << "\n";
      }
    }
    if (rootTruncated) ++truncated;

    // upper sandwich: every parallel step is realizable as single steps
    auto witnesses = oracle.witnesses(g.term);
    for (const ParallelWitness& w : witnesses.items) {
      if (!replayWitness(g.term, w, *reg)) {
        ++violations;
        std::cerr << "parallel step without a single-step realization\n  term: "
                  << printTerm(g.term) << "\n  target: " << printTerm(w.target)
                  << "\n";
      }
    }

    // diamond: distinct single-step reducts close through the development
    for (std::size_t a = 0; a < single.size(); ++a) {
      for (std::size_t b = a + 1; b < single.size(); ++b) {
        if (alphaEq(single[a].result, single[b].result)) continue;
        ++pairs;
        try {
          auto d = oracle.closeDiamond(g.term, single[a].result, single[b].result);
          if (!d.conclusive) ++inconclusive;
        } catch (const OracleViolation& v) {
          ++violations;
          std::cerr << v.what() << "\n";
          dumpViolation(v, opts.out, violations);
        }
      }
    }
  }
  std::cout << "corpus " << corpusName(corpus) << ": " << opts.seeds
            << " terms, " << pairs << " diamond pairs, " << truncated
            << " truncated enumerations, " << inconclusive << " inconclusive, "
            << violations << " violations\n";
  return violations;
}

int cmdOracle(const OracleOpts& opts, const Config& cfg) {
  std::vector<Corpus> corpora;
  if (opts.corpus == "all")
    corpora = {Corpus::Stlc, Corpus::Modal, Corpus::Fixpoint, Corpus::Ops};
  else
    corpora = {corpusFromName(opts.corpus)};
  int violations = 0;
  for (Corpus c : corpora) violations += oracleCorpus(c, opts, cfg);
  if (violations) {
    std::cerr << violations << " oracle violations\n";
    return kExitError;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// repl
// ---------------------------------------------------------------------------

int cmdRepl(const Config& cfg) {
  auto reg = makeBuiltinRegistry(OpSelection::fromList(cfg.ops));
  std::vector<ElabDef> defs = baseDefs(cfg);

  std::cout << "ipcf repl — :t EXPR, :step EXPR, :ops, :load FILE, :quit\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    try {
      if (line.empty()) continue;
      if (line == ":q" || line == ":quit") break;
      if (line == ":ops") {
        for (const auto& op : reg->ops())
          std::cout << "~" << op.name << " : " << printType(opType(op)) << "\n";
        std::cout << "in/out retraction: " << (reg->retractEnabled() ? "on" : "off")
                  << "\n";
        continue;
      }
      if (line.rfind(":load ", 0) == 0) {
        Program p = elaborate(parseFile(readFile(line.substr(6))), defs);
        defs = std::move(p.defs);
        std::cout << "loaded\n";
        continue;
      }
      if (line.rfind(":t ", 0) == 0) {
        Term t = expandTerm(parseTerm(line.substr(3)), defs);
        std::cout << printType(infer(TypingContext{}, t, *reg).first) << "\n";
        continue;
      }
      if (line.rfind(":step ", 0) == 0) {
        Term t = expandTerm(parseTerm(line.substr(6)), defs);
        if (auto s = strategyStep(t, *reg))
          std::cout << stepRuleName(s->rule) << " @ " << pathString(s->path)
                    << " -> " << printTerm(s->result) << "\n";
        else
          std::cout << "normal form\n";
        continue;
      }
      Term t = expandTerm(parseTerm(line), defs);
      infer(TypingContext{}, t, *reg);
      Trace trace = normalize(t, cfg.fuel, *reg);
      if (trace.status == TraceStatus::FuelExhausted)
        std::cout << "fuel exhausted after " << trace.steps.size() << " steps\n";
      else
        std::cout << printTerm(trace.final()) << "\n";
    } catch (const ParseError& e) {
      std::cerr << e.what() << "\n";
    } catch (const TypeError& e) {
      std::cerr << "type error: " << e.what() << "\n";
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intensional PCF: typechecker, stepper, and confluence oracle"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Config cfg;
  app.add_option("--fuel", cfg.fuel, "step budget for normalization")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--ops", cfg.ops,
                 "enabled intensional ops (comma list of tick, done, is-app, retract)");
  app.add_flag("--no-prelude", cfg.noPrelude, "do not preload the prelude");
  app.add_flag("--json", cfg.json, "JSON output for traces and errors");
  app.add_option("--seed", cfg.seed, "base RNG seed");

  std::string file;
  auto* checkCmd = app.add_subcommand("check", "typecheck every definition");
  checkCmd->add_option("file", file, "source file")->required();
  auto* runCmd = app.add_subcommand("run", "normalize main");
  runCmd->add_option("file", file, "source file")->required();
  auto* traceCmd = app.add_subcommand("trace", "normalize main, printing each step");
  traceCmd->add_option("file", file, "source file")->required();

  OracleOpts oo;
  auto* oracleCmd = app.add_subcommand("oracle", "confluence property suite");
  oracleCmd->add_option("--seeds", oo.seeds, "terms per corpus");
  oracleCmd->add_option("--depth", oo.depth, "generator depth");
  oracleCmd->add_option("--corpus", oo.corpus, "stlc, modal, fixpoint, ops, or all");
  oracleCmd->add_option("--limit", oo.limit, "per-node enumeration cap");
  oracleCmd->add_option("--out", oo.out, "directory for violation artifacts");

  auto* replCmd = app.add_subcommand("repl", "interactive loop");

  CLI11_PARSE(app, argc, argv);

  try {
    if (checkCmd->parsed()) return cmdCheck(file, cfg);
    if (runCmd->parsed()) return cmdRun(file, cfg);
    if (traceCmd->parsed()) return cmdTrace(file, cfg);
    if (oracleCmd->parsed()) return cmdOracle(oo, cfg);
    if (replCmd->parsed()) return cmdRepl(cfg);
  } catch (const ParseError& e) {
    reportParseError(e, cfg);
    return kExitError;
  } catch (const TypeError& e) {
    reportTypeError(e, 0, 0, cfg);
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
