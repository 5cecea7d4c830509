#include "fibdiff/verify.hpp"

#include <chrono>
#include <exception>
#include <regex>
#include <sstream>
#include <thread>

#include "fibdiff/errors.hpp"
#include "fibdiff/evaluate.hpp"
#include "fibdiff/numeric.hpp"

namespace fibdiff {

std::string ParamSample::str() const { return "p=" + p.str() + ", q=" + q.str(); }

namespace {

std::set<std::string> sum_bound_indices(const Expr& e) {
  std::set<std::string> out;
  any_node(e, [&](const Expr& n) {
    if (n.kind() == Kind::Sum) {
      for (const Sub* s : {&n.sub(), &n.sub2()}) {
        auto v = s->vars();
        out.insert(v.begin(), v.end());
      }
    }
    return false;
  });
  return out;
}

std::string point_str(const std::map<std::string, long>& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return s.empty() ? "(no indices)" : s;
}

}  // namespace

Grid default_grid(const Identity& id, const Grid& overrides) {
  auto bounded = sum_bound_indices(id.lhs);
  auto br = sum_bound_indices(id.rhs);
  bounded.insert(br.begin(), br.end());
  Grid g;
  for (const auto& v : id.free_indices) {
    IndexRange r{v, -5, 5};
    if (bounded.count(v)) r = {v, 0, 4};
    for (const auto& o : overrides) {
      if (o.var == v) r = o;
    }
    g.push_back(r);
  }
  return g;
}

Grid parse_grid(const std::string& text) {
  static const std::regex item(R"(\s*([a-z][a-z0-9_]*)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  Grid g;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, item)) throw ParseError("bad grid item '" + part + "'", 0);
    IndexRange r{m[1], std::stol(m[2]), std::stol(m[3])};
    if (r.lo > r.hi) throw ParseError("empty grid range for " + r.var, 0);
    g.push_back(r);
  }
  return g;
}

std::string grid_str(const Grid& g) {
  std::string s;
  for (const auto& r : g) {
    s += (s.empty() ? "" : ",") + r.var + "=" + std::to_string(r.lo) + ".." + std::to_string(r.hi);
  }
  return s;
}

std::vector<std::map<std::string, long>> admissible_points(const Identity& id, const Grid& grid) {
  Grid g = grid;
  std::sort(g.begin(), g.end(), [](const IndexRange& a, const IndexRange& b) { return a.var < b.var; });
  std::vector<std::map<std::string, long>> out;
  std::map<std::string, long> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == g.size()) {
      for (const auto& c : id.constraints) {
        if (!c.has_index()) continue;
        auto it = cur.find(c.index);
        if (it != cur.end() && !c.admits(it->second)) return;
      }
      out.push_back(cur);
      return;
    }
    for (long v = g[i].lo; v <= g[i].hi; ++v) {
      cur[g[i].var] = v;
      rec(i + 1);
    }
    cur.erase(g[i].var);
  };
  rec(0);
  return out;
}

Identity with_params(const Identity& id, const ParamSample& s) {
  Identity out = id;
  out.ctx.p = s.p;
  out.ctx.q = s.q;
  for (auto& f : out.ctx.families) {
    if (role_is_symbolic(f.role)) f.role = out.ctx.symbolic_role();
  }
  return out;
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  os << (ok() ? "pass" : "FAIL") << " (" << method << "): " << pass << "/" << cases << " instances";
  if (skipped) os << ", " << skipped << " skipped";
  os << " over " << (grid.empty() ? "a single point" : grid_str(grid));
  if (!param_samples.empty()) {
    os << " with";
    for (const auto& s : param_samples) os << " [" << s << "]";
  }
  if (counterexample) {
    os << "\n  counterexample at " << point_str(counterexample->point);
    if (!counterexample->params.empty()) os << " (" << counterexample->params << ")";
    os << ": lhs = " << counterexample->lhs << ", rhs = " << counterexample->rhs;
  }
  for (const auto& n : notes) os << "\n  note: " << n;
  return os.str();
}

VerifyReport verify_instances(const Identity& id, const VerifyOptions& opts) {
  if (contains_kind(id.lhs, Kind::Arctan) || contains_kind(id.rhs, Kind::Arctan)) {
    NumericOptions n;
    n.precision = opts.precision;
    n.grid = opts.grid;
    n.params = opts.params;
    n.seeds = opts.seeds;
    return numeric_verify(id, n);
  }
  auto start = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.id = id.provenance;
  rep.method = "exact";
  rep.grid = default_grid(id, opts.grid);
  std::vector<Identity> variants;
  if (opts.params.empty()) {
    variants.push_back(id);
  } else {
    for (const auto& s : opts.params) {
      variants.push_back(with_params(id, s));
      rep.param_samples.push_back(s.str());
    }
  }
  auto points = admissible_points(id, rep.grid);
  if (points.empty()) throw PreconditionError("no admissible grid point");

  struct Job {
    std::size_t variant;
    std::size_t point;
  };
  std::vector<Job> jobs;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t p = 0; p < points.size(); ++p) jobs.push_back({v, p});
  }
  std::vector<signed char> status(jobs.size(), 0);  // 0 pass, 1 fail, 2 skipped
  unsigned nthreads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(jobs.size()));
  std::vector<std::exception_ptr> errors(nthreads);
  auto work = [&](unsigned t) {
    try {
      std::vector<std::unique_ptr<Evaluator>> evals(variants.size());
      for (std::size_t i = t; i < jobs.size(); i += nthreads) {
        const Job& j = jobs[i];
        auto& ev = evals[j.variant];
        if (!ev) ev = std::make_unique<Evaluator>(variants[j.variant].ctx, opts.seeds);
        try {
          ExactValue l = ev->eval(variants[j.variant].lhs, points[j.point]);
          ExactValue r = ev->eval(variants[j.variant].rhs, points[j.point]);
          status[i] = same_value(l, r) ? 0 : 1;
        } catch (const ZeroDenominator&) {
          status[i] = 2;
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (nthreads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::optional<std::size_t> first_fail;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ++rep.cases;
    if (status[i] == 0) ++rep.pass;
    if (status[i] == 1) {
      ++rep.fail;
      if (!first_fail) first_fail = i;
    }
    if (status[i] == 2) ++rep.skipped;
  }
  if (rep.skipped) rep.notes.push_back(std::to_string(rep.skipped) + " instances skipped: a denominator vanishes");
  if (first_fail) {
    const Job& j = jobs[*first_fail];
    Evaluator ev(variants[j.variant].ctx, opts.seeds);
    Counterexample c;
    c.point = points[j.point];
    if (!opts.params.empty()) c.params = opts.params[j.variant].str();
    c.lhs = ev.eval(variants[j.variant].lhs, c.point).str();
    c.rhs = ev.eval(variants[j.variant].rhs, c.point).str();
    rep.counterexample = c;
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace fibdiff
