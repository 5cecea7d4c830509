#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibdiff/identity.hpp"

namespace fibdiff {

struct IndexRange {
  std::string var;
  long lo = 0;
  long hi = 0;
};

using Grid = std::vector<IndexRange>;

struct ParamSample {
  Rational p;
  Rational q;
  std::string str() const;
};

struct VerifyOptions {
  Grid grid;                              // per-index overrides; other free indices get defaults
  std::vector<ParamSample> params;        // empty: the identity's own p, q
  std::map<std::string, Rational> seeds;  // empty: seeds stay symbolic
  unsigned threads = 0;                   // 0: hardware concurrency
  unsigned precision = 30;                // digits, used when the identity needs numeric evaluation
};

struct Counterexample {
  std::map<std::string, long> point;
  std::string params;
  std::string lhs;
  std::string rhs;
};

struct VerifyReport {
  std::string id;
  std::string method;  // exact | numeric
  Grid grid;
  std::vector<std::string> param_samples;
  long cases = 0;
  long pass = 0;
  long fail = 0;
  long skipped = 0;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  bool ok() const { return fail == 0 && pass > 0; }
  std::string str() const;
};

// Indices bounding a sum default to [0, 4], all others to [-5, 5].
Grid default_grid(const Identity& id, const Grid& overrides = {});
// "k=-3..3,n=0..4"
Grid parse_grid(const std::string& text);
std::string grid_str(const Grid& g);

// Grid points in lexicographic order (variables sorted by name) that satisfy the constraints.
std::vector<std::map<std::string, long>> admissible_points(const Identity& id, const Grid& grid);

Identity with_params(const Identity& id, const ParamSample& s);

// Exact evaluation at every admissible grid point; arctan identities go to numeric_verify.
VerifyReport verify_instances(const Identity& id, const VerifyOptions& opts = {});

}  // namespace fibdiff
