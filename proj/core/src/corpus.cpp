#include "fibdiff/corpus.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "fibdiff/numeric.hpp"
#include "fibdiff/parser.hpp"

#ifndef FIBDIFF_CORPUS_DIR
#define FIBDIFF_CORPUS_DIR "corpus"
#endif

namespace fibdiff {

bool CorpusEntry::has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }

namespace {

const char* kModes[] = {"prove", "verify", "numeric"};

Rational scalar(const YAML::Node& n) { return Rational::parse(n.as<std::string>()); }

ParamSample sample(const YAML::Node& n) {
  if (!n.IsMap() || !n["p"] || !n["q"]) throw ParseError("parameter sample needs p and q", 0);
  return {scalar(n["p"]), scalar(n["q"])};
}

CorpusEntry parse_entry(const YAML::Node& n, const std::string& file) {
  CorpusEntry e;
  e.file = file;
  if (!n["id"] || !n["identity"]) throw ParseError(file + ": corpus entry needs id and identity", 0);
  e.id = n["id"].as<std::string>();
  auto where = [&](const std::string& msg) { return file + ": entry " + e.id + ": " + msg; };
  e.name = n["name"] ? n["name"].as<std::string>() : e.id;
  if (n["tags"]) e.tags = n["tags"].as<std::vector<std::string>>();
  for (const char* m : kModes) {
    if (e.has_tag(m)) {
      if (!e.mode.empty()) throw ParseError(where("more than one of prove/verify/numeric"), 0);
      e.mode = m;
    }
  }
  if (e.mode.empty()) throw ParseError(where("tags must include prove, verify or numeric"), 0);

  Rational p(1), q(-1);
  if (n["params"]) {
    const YAML::Node& ps = n["params"];
    if (ps.IsSequence()) {
      for (const auto& s : ps) e.params.push_back(sample(s));
      if (e.params.empty()) throw ParseError(where("empty params list"), 0);
    } else {
      e.params.push_back(sample(ps));
    }
    p = e.params.front().p;
    q = e.params.front().q;
  }
  Context ctx = Context::default_table(p, q);
  if (n["families"]) {
    for (const auto& kv : n["families"]) {
      std::string name = kv.first.as<std::string>();
      FamilyRole role = parse_role(kv.second.as<std::string>());
      auto it = std::find_if(ctx.families.begin(), ctx.families.end(), [&](const FamilyDecl& d) { return d.name == name; });
      if (it != ctx.families.end()) {
        it->role = role;
      } else {
        ctx.declare(name, role);
      }
    }
  }
  std::vector<Constraint> cons;
  if (n["constraints"]) {
    for (const auto& c : n["constraints"]) cons.push_back(Constraint::parse(c.as<std::string>()));
  }
  try {
    e.identity = parse_identity(n["identity"].as<std::string>(), ctx, cons, e.id);
  } catch (const ParseError& err) {
    throw ParseError(where(err.what()), err.position());
  }
  if (n["grid"]) e.grid = parse_grid(n["grid"].as<std::string>());
  if (n["seeds"]) {
    for (const auto& kv : n["seeds"]) e.seeds[kv.first.as<std::string>()] = scalar(kv.second);
  }
  if (n["derivation"]) {
    const YAML::Node& d = n["derivation"];
    Derivation dv;
    if (!d["from"] || !d["wrt"]) throw ParseError(where("derivation needs from and wrt"), 0);
    dv.from = d["from"].as<std::string>();
    dv.config.wrt = d["wrt"].as<std::string>();
    dv.config.component = parse_component(d["component"] ? d["component"].as<std::string>() : "real");
    if (d["shift"]) dv.config.shift = d["shift"].as<std::string>();
    if (d["pivot"]) dv.config.pivot = d["pivot"].as<std::string>();
    if (d["combine"]) dv.config.combine = d["combine"].as<std::string>();
    e.derivation = dv;
  }
  return e;
}

VerifyOptions options_for(const CorpusEntry& e) {
  VerifyOptions o;
  o.grid = e.grid;
  o.params = e.params.size() > 1 ? e.params : std::vector<ParamSample>{};
  o.seeds = e.seeds;
  return o;
}

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& all, const std::string& id) {
  for (const auto& e : all) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

// Same sides up to a common scale, or the same sides swapped.
bool matches_target(const Identity& out, const Identity& target) {
  try {
    if (structurally_equal(out, target)) return true;
    return equivalent(out, target);
  } catch (const PreconditionError&) {
    return false;
  }
}

}  // namespace

std::vector<CorpusEntry> parse_corpus_yaml(const std::string& text, const std::string& file) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(file + ": " + e.what(), 0);
  }
  YAML::Node list = root.IsMap() ? root["entries"] : root;
  if (!list || !list.IsSequence()) throw ParseError(file + ": expected a list of entries", 0);
  std::vector<CorpusEntry> out;
  for (const auto& n : list) out.push_back(parse_entry(n, file));
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw PreconditionError("corpus directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& f : fs::directory_iterator(dir)) {
    if (f.path().extension() == ".yaml" || f.path().extension() == ".yml") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> all;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    auto part = parse_corpus_yaml(ss.str(), f.filename().string());
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].id == all[i - 1].id) throw ParseError("duplicate corpus id " + all[i].id, 0);
  }
  for (const auto& e : all) {
    if (e.derivation && !find_entry(all, e.derivation->from)) {
      throw ParseError("entry " + e.id + " derives from unknown entry " + e.derivation->from, 0);
    }
  }
  return all;
}

std::string default_corpus_dir() {
  if (const char* env = std::getenv("FIBDIFF_CORPUS"); env && *env) return env;
  return FIBDIFF_CORPUS_DIR;
}

std::vector<CorpusEntry> filter_by_tags(const std::vector<CorpusEntry>& entries, const std::vector<std::string>& tags) {
  if (tags.empty()) return entries;
  std::vector<CorpusEntry> out;
  for (const auto& e : entries) {
    bool all = true;
    for (const auto& t : tags) all = all && e.has_tag(t);
    if (all) out.push_back(e);
  }
  return out;
}

EntryResult run_entry(const CorpusEntry& e, const std::vector<CorpusEntry>& all) {
  auto start = std::chrono::steady_clock::now();
  EntryResult r;
  r.id = e.id;
  r.mode = e.mode;
  VerifyOptions opts = options_for(e);
  Identity id = e.params.size() == 1 ? with_params(e.identity, e.params.front()) : e.identity;
  try {
    if (e.mode == "prove") {
      std::string why;
      if (!provable_shape(id, &why)) throw PreconditionError("not provable: " + why);
      r.check = check_identity(id, opts);
    } else if (e.mode == "verify") {
      r.check.report = verify_instances(id, opts);
      r.check.ok = r.check.report->ok();
      r.check.status = r.check.ok ? "verified" : "falsified";
    } else {
      NumericOptions n;
      n.grid = opts.grid;
      n.params = opts.params;
      n.seeds = opts.seeds;
      r.check.report = numeric_verify(id, n);
      r.check.ok = r.check.report->ok();
      r.check.status = r.check.ok ? "numerically verified" : "numerically falsified";
    }
    r.ok = r.check.ok;
    r.status = r.check.status;
  } catch (const std::exception& ex) {
    r.ok = false;
    r.status = "error";
    r.detail = ex.what();
  }
  if (e.derivation) {
    const CorpusEntry* src = find_entry(all, e.derivation->from);
    try {
      if (!src) throw PreconditionError("unknown source entry " + e.derivation->from);
      // One pipeline run per parameter sample.
      std::vector<std::optional<ParamSample>> samples;
      if (e.params.empty()) samples.push_back(std::nullopt);
      for (const auto& ps : e.params) samples.push_back(ps);
      for (const auto& ps : samples) {
        DeriveConfig cfg = e.derivation->config;
        cfg.verify = options_for(e);
        Identity source = src->identity;
        Identity target = e.identity;
        if (ps && cfg.combine && QuadField::is_degenerate(ps->p * ps->p - Rational(4) * ps->q)) {
          r.notes.push_back("recombination skipped for " + ps->str() + ": square discriminant");
          continue;
        }
        if (ps) {
          source = with_params(source, *ps);
          target = with_params(target, *ps);
          cfg.verify.params = {*ps};
        }
        DeriveResult d = run_derive(source, cfg);
        std::string where = ps ? " [" + ps->str() + "]" : "";
        if (!d.check.ok) {
          r.ok = false;
          r.derived_status = "pipeline output " + d.check.status + where;
          r.derived = std::move(d);
          break;
        }
        if (r.derived_status.empty() || r.derived_status == "matches target") {
          r.derived_status = matches_target(d.output, target) ? "matches target" : "valid, differs from target" + where;
        }
        if (!r.derived) r.derived = std::move(d);
      }
    } catch (const std::exception& ex) {
      r.ok = false;
      r.derived_status = std::string("pipeline error: ") + ex.what();
    }
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries, const std::vector<CorpusEntry>& all,
                         unsigned threads) {
  auto start = std::chrono::steady_clock::now();
  CorpusSummary s;
  s.results.resize(entries.size());
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, entries.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) s.results[i] = run_entry(entries[i], all);
  };
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::sort(s.results.begin(), s.results.end(), [](const EntryResult& a, const EntryResult& b) { return a.id < b.id; });
  for (const auto& r : s.results) (r.ok ? s.passed : s.failed)++;
  s.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string CorpusSummary::table() const {
  std::size_t w = 4;
  for (const auto& r : results) w = std::max(w, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "id" << "  " << std::setw(8) << "mode" << "  result\n";
  for (const auto& r : results) {
    os << std::setw(static_cast<int>(w)) << r.id << "  " << std::setw(8) << r.mode << "  " << (r.ok ? "ok  " : "FAIL")
       << "  " << r.status;
    if (!r.derived_status.empty()) os << "; derivation " << r.derived_status;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n";
  }
  os << passed << " passed, " << failed << " failed\n";
  return os.str();
}

}  // namespace fibdiff
