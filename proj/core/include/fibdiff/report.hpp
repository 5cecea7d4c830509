#pragma once

#include <string>

#include "fibdiff/corpus.hpp"

namespace fibdiff {

// JSON documents; with timing = false the elapsed-ms fields are omitted so runs compare byte for byte.
std::string to_json(const Identity& id);
std::string to_json(const ProofVerdict& v);
std::string to_json(const VerifyReport& r, bool timing = true);
std::string to_json(const DeriveResult& d, bool timing = true);
std::string to_json(const CorpusSummary& s, bool timing = true);

struct ReplayRequest {
  Identity input;
  DeriveConfig config;
  std::string expected_output;
};

// Reads a derive trace document back into the run that produced it.
ReplayRequest parse_trace(const std::string& json);

}  // namespace fibdiff
