#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibdiff/canonical.hpp"
#include "fibdiff/errors.hpp"
#include "fibdiff/verify.hpp"

namespace fibdiff {

enum class Component { Real, Imag };

std::string component_name(Component c);
Component parse_component(const std::string& text);

struct DeriveConfig {
  std::string wrt;
  Component component = Component::Real;
  std::optional<std::string> shift;    // fresh index for the sigma shift (imag only)
  std::optional<std::string> pivot;    // subscript text overriding the default pivot
  std::optional<std::string> combine;  // fresh symbolic family for Binet recombination
  VerifyOptions verify;                // used when the output cannot be proved
};

// The derivation produced nothing beyond a trivial identity.
struct NoNewIdentity : Error {
  using Error::Error;
};

// Raised with the failing step's name prepended.
struct StepError : PreconditionError {
  StepError(const std::string& step, const std::string& msg) : PreconditionError(step + ": " + msg), step_(step) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

struct TraceStep {
  std::string name;
  std::string form;
};

// Result of proving when possible, otherwise verifying on the default grid.
struct CheckOutcome {
  bool ok = false;
  std::string status;  // proved | refuted | verified | falsified
  std::optional<ProofVerdict> proof;
  std::optional<VerifyReport> report;
  std::string route;  // why verification was used instead of a proof
};

CheckOutcome check_identity(const Identity& id, const VerifyOptions& opts = {});

struct DeriveResult {
  Identity input;
  DeriveConfig config;
  Identity output;
  std::vector<TraceStep> trace;
  CheckOutcome check;
};

DeriveResult run_derive(const Identity& input, const DeriveConfig& cfg);

// First index name among s, t, u, v, w, s2, s3, ... not used by the identity.
std::string fresh_index(const Identity& id, const std::string& preferred = "s");

}  // namespace fibdiff
