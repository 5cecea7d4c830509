#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fibdiff/numeric.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/report.hpp"

using namespace fibdiff;

namespace {

enum Exit { kOk = 0, kFailed = 1, kParse = 2, kPrecondition = 3, kNoEntries = 4 };

struct Common {
  std::string input;
  std::string p = "1";
  std::string q = "-1";
  std::vector<std::string> families;  // NAME=role
  std::vector<std::string> constraints;
  std::string format = "text";
  std::string grid;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Context make_context(const Common& c) {
  Context ctx = Context::default_table(Rational::parse(c.p), Rational::parse(c.q));
  for (const auto& f : c.families) {
    auto eq = f.find('=');
    if (eq == std::string::npos) throw ParseError("--family expects NAME=role, got '" + f + "'", 0);
    std::string name = f.substr(0, eq);
    FamilyRole role = parse_role(f.substr(eq + 1));
    bool found = false;
    for (auto& d : ctx.families) {
      if (d.name == name) {
        d.role = role;
        found = true;
      }
    }
    if (!found) ctx.declare(name, role);
  }
  return ctx;
}

Identity read_identity(const Common& c) {
  std::string text = c.input;
  if (!text.empty() && text[0] == '@') text = slurp(text.substr(1));
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  std::vector<Constraint> cons;
  for (const auto& s : c.constraints) cons.push_back(Constraint::parse(s));
  return parse_identity(text, make_context(c), cons, "command line");
}

void add_common(CLI::App* cmd, Common& c, bool with_grid) {
  cmd->add_option("identity", c.input, "identity text, or @path to read it from a file")->required();
  cmd->add_option("--p", c.p, "recurrence parameter p");
  cmd->add_option("--q", c.q, "recurrence parameter q");
  cmd->add_option("--family", c.families, "declare a family, NAME=role");
  cmd->add_option("--constraint", c.constraints, "constraint such as 'k even' or 'n >= 1'");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  if (with_grid) cmd->add_option("--grid", c.grid, "index ranges, e.g. k=-3..3,n=0..4");
}

void print_check(const CheckOutcome& c) {
  if (c.proof) std::cout << c.proof->str() << "\n";
  if (c.report) {
    if (!c.route.empty()) std::cout << "not provable (" << c.route << "), verified instead\n";
    std::cout << c.report->str() << "\n";
  }
}

int run_derive_cmd(const Common& c, const DeriveConfig& base) {
  Identity input = read_identity(c);
  DeriveConfig cfg = base;
  if (!c.grid.empty()) cfg.verify.grid = parse_grid(c.grid);
  DeriveResult r = run_derive(input, cfg);
  if (c.format == "json") {
    std::cout << to_json(r) << "\n";
  } else {
    for (const auto& s : r.trace) std::cout << s.name << ": " << s.form << "\n";
    std::cout << "derived: " << print_identity(r.output) << "\n";
    print_check(r.check);
  }
  return r.check.ok ? kOk : kFailed;
}

int run_replay(const std::string& path, const std::string& format) {
  ReplayRequest req = parse_trace(slurp(path));
  DeriveResult r = run_derive(req.input, req.config);
  std::string got = print_identity(r.output);
  bool same = got == req.expected_output;
  if (format == "json") {
    std::cout << to_json(r) << "\n";
  } else {
    std::cout << "replayed: " << got << "\n";
    std::cout << (same ? "matches the recorded output" : "differs from the recorded output: " + req.expected_output)
              << "\n";
  }
  return same && r.check.ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentiation-based derivation and checking of Fibonacci-type identities"};
  app.require_subcommand(1);

  Common parse_c;
  auto* parse = app.add_subcommand("parse", "parse an identity and print its normal form");
  add_common(parse, parse_c, false);

  Common derive_c;
  DeriveConfig derive_cfg;
  std::string component = "real", shift, pivot, combine, replay;
  auto* derive = app.add_subcommand("derive", "differentiate an identity and extract a component");
  derive->add_option("identity", derive_c.input, "identity text, or @path");
  derive->add_option("--p", derive_c.p, "recurrence parameter p");
  derive->add_option("--q", derive_c.q, "recurrence parameter q");
  derive->add_option("--family", derive_c.families, "declare a family, NAME=role");
  derive->add_option("--constraint", derive_c.constraints, "constraint on a free index");
  derive->add_option("--format", derive_c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  derive->add_option("--grid", derive_c.grid, "index ranges for verifying a non-provable output");
  derive->add_option("--wrt", derive_cfg.wrt, "free index to differentiate with respect to");
  derive->add_option("--component", component, "real or imag")->check(CLI::IsMember({"real", "imag"}));
  derive->add_option("--shift", shift, "fresh index for the sigma shift");
  derive->add_option("--pivot", pivot, "subscript overriding the default shift pivot");
  derive->add_option("--combine", combine, "fresh family for Binet recombination");
  derive->add_option("--replay", replay, "re-run a saved JSON trace and compare its output");

  Common prove_c;
  auto* prove = app.add_subcommand("prove", "decide an identity by canonical Binet forms");
  add_common(prove, prove_c, false);

  Common verify_c;
  bool numeric = false;
  unsigned precision = 30;
  std::vector<std::string> seeds;
  auto* verify = app.add_subcommand("verify", "check an identity at every grid point");
  add_common(verify, verify_c, true);
  verify->add_flag("--numeric", numeric, "high-precision floating evaluation");
  verify->add_option("--precision", precision, "decimal digits for numeric checks");
  verify->add_option("--seed", seeds, "bind a seed symbol, e.g. G0=2");

  std::vector<std::string> tags, ids;
  std::string corpus_format = "text", corpus_dir;
  bool no_timing = false;
  unsigned threads = 0;
  auto* corpus = app.add_subcommand("corpus", "run the identity corpus");
  corpus->add_option("--tag", tags, "only entries carrying all given tags");
  corpus->add_option("--id", ids, "only the given entries");
  corpus->add_option("--dir", corpus_dir, "corpus directory (default: $FIBDIFF_CORPUS or the bundled corpus)");
  corpus->add_option("--format", corpus_format, "output format")->check(CLI::IsMember({"text", "json"}));
  corpus->add_flag("--no-timing", no_timing, "omit elapsed times from JSON output");
  corpus->add_option("--threads", threads, "worker threads (0: all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse) {
      Identity id = read_identity(parse_c);
      if (parse_c.format == "json") {
        std::cout << to_json(id) << "\n";
      } else {
        std::string frees;
        for (const auto& v : id.free_indices) frees += (frees.empty() ? "" : " ") + v;
        std::cout << print_identity(id) << "\nfree indices: " << (frees.empty() ? "(none)" : frees) << "\n";
      }
      return kOk;
    }
    if (*derive) {
      if (!replay.empty()) return run_replay(replay, derive_c.format);
      if (derive_c.input.empty()) throw PreconditionError("derive needs an identity (or --replay)");
      derive_cfg.component = parse_component(component);
      if (!shift.empty()) derive_cfg.shift = shift;
      if (!pivot.empty()) derive_cfg.pivot = pivot;
      if (!combine.empty()) derive_cfg.combine = combine;
      return run_derive_cmd(derive_c, derive_cfg);
    }
    if (*prove) {
      Identity id = read_identity(prove_c);
      ProofVerdict v = prove_identity(id);
      std::cout << (prove_c.format == "json" ? to_json(v) : v.str()) << "\n";
      return v.proved ? kOk : kFailed;
    }
    if (*verify) {
      Identity id = read_identity(verify_c);
      Grid g = verify_c.grid.empty() ? Grid{} : parse_grid(verify_c.grid);
      std::map<std::string, Rational> bound;
      for (const auto& s : seeds) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("--seed expects NAME=value", 0);
        bound[s.substr(0, eq)] = Rational::parse(s.substr(eq + 1));
      }
      VerifyReport r;
      if (numeric) {
        NumericOptions n;
        n.precision = precision;
        n.grid = g;
        n.seeds = bound;
        r = numeric_verify(id, n);
      } else {
        VerifyOptions o;
        o.grid = g;
        o.seeds = bound;
        o.precision = precision;
        r = verify_instances(id, o);
      }
      std::cout << (verify_c.format == "json" ? to_json(r) : r.str()) << "\n";
      return r.ok() ? kOk : kFailed;
    }
    if (*corpus) {
      auto all = load_corpus(corpus_dir.empty() ? default_corpus_dir() : corpus_dir);
      auto sel = filter_by_tags(all, tags);
      if (!ids.empty()) {
        std::vector<CorpusEntry> keep;
        for (const auto& e : sel) {
          if (std::find(ids.begin(), ids.end(), e.id) != ids.end()) keep.push_back(e);
        }
        sel = keep;
      }
      if (sel.empty()) {
        std::cerr << "no entries\n";
        return kNoEntries;
      }
      CorpusSummary s = run_corpus(sel, all, threads);
      std::cout << (corpus_format == "json" ? to_json(s, !no_timing) : s.table());
      if (corpus_format == "json") std::cout << "\n";
      return s.ok() ? kOk : kFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const NoNewIdentity& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  } catch (const UnsupportedForProof& e) {
    std::cerr << "cannot prove: " << e.what() << "\nhint: use 'fibdiff verify' to check instances\n";
    return kPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
