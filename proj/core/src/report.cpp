#include "fibdiff/report.hpp"

#include <nlohmann/json.hpp>

#include "fibdiff/parser.hpp"
#include "fibdiff/printer.hpp"

namespace fibdiff {

using Json = nlohmann::ordered_json;

namespace {

Json proof_json(const ProofVerdict& v) {
  Json cases = Json::array();
  for (const auto& c : v.cases) {
    Json signs = Json::object();
    for (const auto& [k, s] : c.signs) signs[k] = s > 0 ? "even" : "odd";
    Json j{{"parity", signs}, {"holds", c.holds}};
    if (!c.holds) j["residue"] = c.residue;
    cases.push_back(j);
  }
  Json out{{"verdict", v.proved ? "proved" : "refuted"}, {"cases", cases}, {"side_conditions", v.side_conditions}};
  if (!v.proved) out["residue"] = v.residue;
  return out;
}

Json report_json(const VerifyReport& r, bool timing) {
  Json grid = Json::array();
  for (const auto& g : r.grid) grid.push_back({{"index", g.var}, {"lo", g.lo}, {"hi", g.hi}});
  Json out{{"id", r.id},       {"method", r.method}, {"grid", grid},   {"params", r.param_samples},
           {"cases", r.cases}, {"pass", r.pass},     {"fail", r.fail}, {"skipped", r.skipped}};
  if (r.counterexample) {
    Json pt = Json::object();
    for (const auto& [k, v] : r.counterexample->point) pt[k] = v;
    out["counterexample"] = {{"point", pt}, {"params", r.counterexample->params}, {"lhs", r.counterexample->lhs},
                             {"rhs", r.counterexample->rhs}};
  } else {
    out["counterexample"] = nullptr;
  }
  out["notes"] = r.notes;
  if (timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

Json check_json(const CheckOutcome& c, bool timing) {
  Json out{{"status", c.status}, {"ok", c.ok}};
  if (c.proof) out["proof"] = proof_json(*c.proof);
  if (c.report) out["verify"] = report_json(*c.report, timing);
  if (!c.route.empty()) out["routed_to_verify"] = c.route;
  return out;
}

Json context_json(const Identity& a, const Identity& b) {
  std::set<std::string> used = families_used(a.lhs);
  for (const Expr* e : {&a.rhs, &b.lhs, &b.rhs}) {
    auto u = families_used(*e);
    used.insert(u.begin(), u.end());
  }
  Json fams = Json::array();
  for (const auto& n : used) {
    const FamilyDecl* d = b.ctx.find(n);
    if (!d) d = a.ctx.find(n);
    if (d) fams.push_back({{"name", d->name}, {"role", role_name(d->role)}});
  }
  return {{"p", a.ctx.p.str()}, {"q", a.ctx.q.str()}, {"families", fams}};
}

Json opt(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

Json derive_json(const DeriveResult& d, bool timing) {
  Json constraints = Json::array();
  for (const auto& c : d.input.constraints) constraints.push_back(c.str());
  Json steps = Json::array();
  for (const auto& s : d.trace) steps.push_back({{"step", s.name}, {"form", s.form}});
  return {{"kind", "derive-trace"},
          {"context", context_json(d.input, d.output)},
          {"input", print_identity(d.input)},
          {"constraints", constraints},
          {"config",
           {{"wrt", d.config.wrt},
            {"component", component_name(d.config.component)},
            {"shift", opt(d.config.shift)},
            {"pivot", opt(d.config.pivot)},
            {"combine", opt(d.config.combine)}}},
          {"steps", steps},
          {"output", print_identity(d.output)},
          {"check", check_json(d.check, timing)}};
}

}  // namespace

std::string to_json(const Identity& id) {
  Json cons = Json::array();
  for (const auto& c : id.constraints) cons.push_back(c.str());
  return Json{{"identity", print_identity(id)},
              {"free_indices", id.free_indices},
              {"constraints", cons},
              {"context", context_json(id, id)}}
      .dump(2);
}

std::string to_json(const ProofVerdict& v) { return proof_json(v).dump(2); }
std::string to_json(const VerifyReport& r, bool timing) { return report_json(r, timing).dump(2); }
std::string to_json(const DeriveResult& d, bool timing) { return derive_json(d, timing).dump(2); }

std::string to_json(const CorpusSummary& s, bool timing) {
  Json entries = Json::array();
  for (const auto& r : s.results) {
    Json e{{"id", r.id}, {"mode", r.mode}, {"ok", r.ok}, {"status", r.status}};
    if (!r.detail.empty()) e["detail"] = r.detail;
    e["check"] = check_json(r.check, timing);
    if (r.derived || !r.derived_status.empty()) {
      Json dj{{"status", r.derived_status}};
      if (r.derived) {
        dj["output"] = print_identity(r.derived->output);
        dj["check"] = check_json(r.derived->check, timing);
      }
      if (!r.notes.empty()) dj["notes"] = r.notes;
      e["derivation"] = dj;
    }
    if (timing) e["elapsed_ms"] = r.elapsed_ms;
    entries.push_back(e);
  }
  Json out{{"kind", "corpus-summary"}, {"entries", entries}, {"passed", s.passed}, {"failed", s.failed}};
  if (timing) out["elapsed_ms"] = s.elapsed_ms;
  return out.dump(2);
}

ReplayRequest parse_trace(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("trace is not valid JSON: ") + e.what(), 0);
  }
  try {
    const Json& c = j.at("context");
    Context ctx = Context::default_table(Rational::parse(c.at("p").get<std::string>()),
                                         Rational::parse(c.at("q").get<std::string>()));
    for (const auto& f : c.at("families")) {
      std::string name = f.at("name").get<std::string>();
      FamilyRole role = parse_role(f.at("role").get<std::string>());
      bool found = false;
      for (auto& d : ctx.families) {
        if (d.name == name) {
          d.role = role;
          found = true;
        }
      }
      if (!found) ctx.declare(name, role);
    }
    std::vector<Constraint> cons;
    for (const auto& s : j.at("constraints")) cons.push_back(Constraint::parse(s.get<std::string>()));
    ReplayRequest r{parse_identity(j.at("input").get<std::string>(), ctx, cons), {}, j.at("output").get<std::string>()};
    const Json& cfg = j.at("config");
    r.config.wrt = cfg.at("wrt").get<std::string>();
    r.config.component = parse_component(cfg.at("component").get<std::string>());
    auto str_opt = [&](const char* key) -> std::optional<std::string> {
      if (!cfg.contains(key) || cfg[key].is_null()) return std::nullopt;
      return cfg[key].get<std::string>();
    };
    r.config.shift = str_opt("shift");
    r.config.pivot = str_opt("pivot");
    r.config.combine = str_opt("combine");
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed trace: ") + e.what(), 0);
  }
}

}  // namespace fibdiff
