// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "fibdiff/canonical.hpp"
#include "fibdiff/corpus.hpp"
#include "fibdiff/numeric.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/pipeline.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/report.hpp"
#include "fibdiff/sequence.hpp"
#include "fibdiff/verify.hpp"
#include "gen.hpp"
#include "perturb.hpp"

using namespace fibdiff;
using fibdiff::testing::Gen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = seconds_since(t0);
  if (!o.ok) ++failures;
  std::printf("%s %d: %s [%.3f s] %s\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), s, o.detail.c_str());
  std::fflush(stdout);
}

struct Timed {
  DeriveResult result;
  double seconds;
};

Timed derive(const std::string& text, const std::string& wrt, Component c, std::optional<std::string> shift = {},
             std::optional<std::string> combine = {}) {
  DeriveConfig cfg;
  cfg.wrt = wrt;
  cfg.component = c;
  cfg.shift = std::move(shift);
  cfg.combine = std::move(combine);
  auto t0 = Clock::now();
  DeriveResult d = run_derive(parse_identity(text), cfg);
  return {d, seconds_since(t0)};
}

bool proved(const Identity& id) { return prove_identity(id).proved; }

Outcome double_angle_real() {
  Timed t = derive("F[2k] = L[k]*F[k]", "k", Component::Real);
  std::string out = print_identity(t.result.output);
  bool ok = out == "2*L[2k] = L[k]^2 + 5*F[k]^2" && proved(t.result.output) && t.seconds < 1.0;
  return {ok, out + " (" + t.result.check.status + ")"};
}

Outcome imag_and_combine() {
  Timed a = derive("F[2k] = L[k]*F[k]", "k", Component::Imag);
  Timed b = derive("F[k+1]^2 + F[k]^2 = F[2k+1]", "k", Component::Imag, "s", "G");
  std::string oa = print_identity(a.result.output), ob = print_identity(b.result.output);
  bool ok = oa == "2*beta^k = L[k] - sqrtD*F[k]" && proved(a.result.output) && a.seconds < 1.0 &&
            ob == "F[k+1]*G[s+1] + F[k]*G[s] = G[k+s+1]" && proved(b.result.output) && b.seconds < 1.0;
  return {ok, oa + "; " + ob};
}

Outcome sum_free_proved(const std::vector<CorpusEntry>& corpus) {
  auto t0 = Clock::now();
  int n = 0, bad = 0;
  std::string first_bad;
  for (const auto& e : corpus) {
    if (e.mode != "prove" || !provable_shape(e.identity)) continue;
    Identity id = e.params.empty() ? e.identity : with_params(e.identity, e.params.front());
    if (proved(id)) {
      ++n;
    } else if (bad++ == 0) {
      first_bad = e.id;
    }
  }
  double s = seconds_since(t0);
  std::ostringstream os;
  os << n << " proved, " << bad << " not proved" << (bad ? " (first: " + first_bad + ")" : "");
  return {n >= 25 && bad == 0 && s < 30.0, os.str()};
}

bool has_sum(const Identity& id) { return contains_kind(id.lhs, Kind::Sum) || contains_kind(id.rhs, Kind::Sum); }

Outcome sums_verified(const std::vector<CorpusEntry>& corpus) {
  auto t0 = Clock::now();
  int n = 0, bad = 0;
  long instances = 0;
  std::string first_bad;
  for (const auto& e : corpus) {
    if (e.mode != "verify" || !has_sum(e.identity)) continue;
    VerifyOptions o;
    o.params = e.params;
    o.seeds = e.seeds;
    VerifyReport r = verify_instances(e.identity, o);
    instances += r.pass;
    if (r.ok()) {
      ++n;
    } else if (bad++ == 0) {
      first_bad = e.id;
    }
  }
  double s = seconds_since(t0);
  std::ostringstream os;
  os << n << " summation identities, " << instances << " instances" << (bad ? ", failing: " + first_bad : "");
  return {n > 0 && bad == 0 && s < 60.0, os.str()};
}

Outcome analytic_facts(const std::vector<CorpusEntry>& corpus) {
  Context golden = Context::default_table();
  std::ostringstream os;
  bool ok = true;
  for (const char* fam : {"F", "L"}) {
    VerifyReport r = check_derivative_facts(golden, fam, -10, 10, 30, 1e-12);
    ok = ok && r.ok();
    os << fam << " derivative " << r.pass << "/" << r.cases << "; ";
  }
  int arctan = 0;
  for (const auto& e : corpus) {
    if (!e.has_tag("arctan")) continue;
    if (e.mode == "numeric") {
      NumericOptions o;
      o.grid = e.grid;
      VerifyReport r = numeric_verify(e.identity, o);
      if (!r.ok()) os << e.id << " failed; ";
      ok = ok && r.ok();
    } else {
      EntryResult r = run_entry(e, corpus);
      if (!r.ok) os << e.id << " " << r.status << "; ";
      ok = ok && r.ok;
    }
    ++arctan;
  }
  os << arctan << " arctan entries";
  return {ok && arctan >= 3, os.str()};
}

Outcome lemma_binet_conjugation() {
  Gen g(2024);
  int trials = 0;
  for (; trials < 100; ++trials) {
    auto [p, q] = g.params();
    Rational rp(p), rq(q);
    const QuadField& f = QuadField::for_params(rp, rq);
    SequenceSpec w = SequenceSpec::make("W", FamilyRole::Horadam, rp, rq, f);
    BinetPair ab = binet_coefficients(w);
    Rational s0 = g.rational(9, 3), s1 = g.rational(9, 3);
    std::map<std::string, Rational> seeds{{"W0", s0}, {"W1", s1}};
    QuadExt a = ab.A.substitute(seeds), b = ab.B.substitute(seeds);
    QuadExt tau = QuadExt::tau(f, rp), sigma = QuadExt::sigma(f, rp), root_inv = QuadExt::radical(f).inverse();
    for (long j = -8; j <= 8; ++j) {
      Rational wj = fibdiff::testing::recurrence_term(rp, rq, s0, s1, j);
      Rational next = fibdiff::testing::recurrence_term(rp, rq, s0, s1, j + 1);
      Rational prev = fibdiff::testing::recurrence_term(rp, rq, s0, s1, j - 1);
      if (!(a * tau.pow(j) + b * sigma.pow(j) == QuadExt(f, wj))) {
        return {false, "Binet fails at p=" + std::to_string(p) + " q=" + std::to_string(q) + " j=" + std::to_string(j)};
      }
      if (!(a * tau.pow(j) - b * sigma.pow(j) == QuadExt(f, next - rq * prev) * root_inv)) {
        return {false, "lemma fails at p=" + std::to_string(p) + " q=" + std::to_string(q) + " j=" + std::to_string(j)};
      }
    }
  }
  const std::vector<long> radicands{2, 3, 5, 8, 13, 17};
  int laws = 0;
  for (; laws < 10000; ++laws) {
    const QuadField& f = QuadField::get(Rational(g.pick(radicands)));
    QuadExt x = g.quad(f), y = g.quad(f);
    if (!(quad_conj(x * y) == quad_conj(x) * quad_conj(y)) || !(quad_conj(x + y) == quad_conj(x) + quad_conj(y)) ||
        !(quad_conj(quad_conj(x)) == x)) {
      return {false, "conjugation law fails for " + x.str() + ", " + y.str()};
    }
  }
  return {true, std::to_string(trials) + " parameter/seed draws x 17 indices, " + std::to_string(laws) +
                    " conjugation checks"};
}

Outcome perturbed_refuted() {
  auto pool = fibdiff::testing::golden_pool();
  if (pool.empty()) return {false, "empty pool"};
  Gen g(7);
  int refuted = 0, falsified = 0;
  for (int i = 0; i < 100; ++i) {
    Identity bad = fibdiff::testing::perturb(pool[static_cast<std::size_t>(i) % pool.size()], g);
    if (!prove_identity(bad).proved) ++refuted;
    VerifyOptions o;
    o.seeds = fibdiff::testing::fixed_seeds();
    VerifyReport r = verify_instances(bad, o);
    if (!r.ok() && r.counterexample) ++falsified;
  }
  return {refuted == 100 && falsified == 100,
          std::to_string(refuted) + "/100 refuted, " + std::to_string(falsified) + "/100 falsified"};
}

Outcome deterministic_corpus(const std::vector<CorpusEntry>& corpus) {
  std::string a = to_json(run_corpus(corpus, corpus), false);
  std::string b = to_json(run_corpus(corpus, corpus, 1), false);
  return {a == b, std::to_string(corpus.size()) + " entries, " + std::to_string(a.size()) + " bytes"};
}

}  // namespace

int main() {
  auto corpus = load_corpus(default_corpus_dir());
  criterion(1, "real part of the double-angle identity", double_angle_real);
  criterion(2, "imaginary part and Binet recombination", imag_and_combine);
  criterion(3, "sum-free identities proved", [&] { return sum_free_proved(corpus); });
  criterion(4, "summation identities verified", [&] { return sums_verified(corpus); });
  criterion(5, "derivative facts and arctan identities", [&] { return analytic_facts(corpus); });
  criterion(6, "lemma, Binet form and conjugation laws", lemma_binet_conjugation);
  criterion(7, "perturbed identities refuted and falsified", perturbed_refuted);
  criterion(8, "corpus JSON is deterministic", [&] { return deterministic_corpus(corpus); });
  return failures == 0 ? 0 : 1;
}
