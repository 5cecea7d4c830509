#include "fibdiff/pipeline.hpp"

#include "fibdiff/differentiate.hpp"
#include "fibdiff/numeric.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/transforms.hpp"

namespace fibdiff {

std::string component_name(Component c) { return c == Component::Real ? "real" : "imag"; }

Component parse_component(const std::string& text) {
  if (text == "real") return Component::Real;
  if (text == "imag") return Component::Imag;
  throw PreconditionError("component must be real or imag, got '" + text + "'");
}

CheckOutcome check_identity(const Identity& id, const VerifyOptions& opts) {
  CheckOutcome out;
  std::string why;
  if (provable_shape(id, &why)) {
    if (opts.params.empty()) {
      out.proof = prove_identity(id);
    } else {
      for (const auto& s : opts.params) {
        ProofVerdict v = prove_identity(with_params(id, s));
        if (!out.proof || (out.proof->proved && !v.proved)) out.proof = v;
      }
    }
    out.ok = out.proof->proved;
    out.status = out.ok ? "proved" : "refuted";
    return out;
  }
  out.route = why;
  out.report = verify_instances(id, opts);
  out.ok = out.report->ok();
  out.status = out.ok ? "verified" : "falsified";
  return out;
}

std::string fresh_index(const Identity& id, const std::string& preferred) {
  std::set<std::string> taken = id.free_indices;
  for (const Expr* e : {&id.lhs, &id.rhs}) {
    auto b = bound_vars(*e);
    taken.insert(b.begin(), b.end());
  }
  std::vector<std::string> options{preferred, "s", "t", "u", "v", "w"};
  for (const auto& o : options) {
    if (!taken.count(o)) return o;
  }
  for (int i = 2;; ++i) {
    std::string o = preferred + std::to_string(i);
    if (!taken.count(o)) return o;
  }
}

namespace {

template <typename F>
auto step(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StepError&) {
    throw;
  } catch (const NoNewIdentity&) {
    throw;
  } catch (const PreconditionError& e) {
    throw StepError(name, e.what());
  }
}

bool trivial(const Identity& id) { return id.lhs == id.rhs; }

}  // namespace

DeriveResult run_derive(const Identity& input, const DeriveConfig& cfg) {
  DeriveResult r{input, cfg, input, {}, {}};
  if (cfg.wrt.empty()) throw StepError("differentiate", "an index to differentiate with respect to is required");
  if (cfg.component == Component::Real && (cfg.shift || cfg.combine || cfg.pivot)) {
    throw StepError("configure", "shift, pivot and combine apply to the imag component only");
  }
  r.trace.push_back({"input", print_identity(input)});
  DerivedForm df = step("differentiate", [&] { return differentiate(input, cfg.wrt); });
  r.trace.push_back({"differentiate", print_form(df.lhs, df.rhs, input.ctx)});
  if (df.lhs == df.rhs) throw NoNewIdentity("differentiation yields a trivial identity: no new identity");

  Identity cur = input;
  if (cfg.component == Component::Real) {
    cur = step("real part", [&] { return apply_real_part(df); });
    r.trace.push_back({"real part", print_identity(cur)});
  } else {
    cur = step("imaginary part", [&] { return apply_imag_part(df); });
    r.trace.push_back({"imaginary part", print_identity(cur)});
    if (cfg.shift || cfg.combine || cfg.pivot) {
      std::string fresh = cfg.shift ? *cfg.shift : fresh_index(cur);
      cur = step("shift", [&] {
        std::optional<Sub> pivot;
        if (cfg.pivot) pivot = parse_subscript(*cfg.pivot);
        return shift_normalize(cur, fresh, pivot);
      });
      r.trace.push_back({"shift", print_identity(cur)});
    }
    if (cfg.combine) {
      Identity conj = step("conjugate", [&] { return conjugate_swap(cur); });
      r.trace.push_back({"conjugate", print_identity(conj)});
      cur = step("combine", [&] { return binet_combine(cur, *cfg.combine); });
      r.trace.push_back({"combine", print_identity(cur)});
    }
  }
  if (trivial(cur)) throw NoNewIdentity("the derived identity is trivial: no new identity");
  r.output = cur;
  r.check = step("check", [&] { return check_identity(cur, cfg.verify); });
  return r;
}

}  // namespace fibdiff
