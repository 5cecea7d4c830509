#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibdiff/pipeline.hpp"

namespace fibdiff {

struct Derivation {
  std::string from;  // id of the source entry
  DeriveConfig config;
};

struct CorpusEntry {
  std::string id;
  std::string name;
  std::string file;
  std::vector<std::string> tags;
  std::string mode;  // prove | verify | numeric
  Identity identity;
  std::vector<ParamSample> params;
  Grid grid;
  std::map<std::string, Rational> seeds;
  std::optional<Derivation> derivation;

  bool has_tag(const std::string& t) const;
};

// Loads every *.yaml file in dir (sorted by name). Entries are sorted by id; ids must be unique.
std::vector<CorpusEntry> load_corpus(const std::string& dir);
std::vector<CorpusEntry> parse_corpus_yaml(const std::string& text, const std::string& file = "<string>");

// FIBDIFF_CORPUS if set, otherwise the corpus directory of the source tree.
std::string default_corpus_dir();

std::vector<CorpusEntry> filter_by_tags(const std::vector<CorpusEntry>& entries, const std::vector<std::string>& tags);

struct EntryResult {
  std::string id;
  std::string mode;
  bool ok = false;
  std::string status;
  std::string detail;
  CheckOutcome check;
  std::optional<DeriveResult> derived;
  std::string derived_status;  // matches target | differs from target | error text
  std::vector<std::string> notes;
  double elapsed_ms = 0;
};

struct CorpusSummary {
  std::vector<EntryResult> results;
  long passed = 0;
  long failed = 0;
  double elapsed_ms = 0;

  bool ok() const { return failed == 0 && passed > 0; }
  std::string table() const;
};

EntryResult run_entry(const CorpusEntry& e, const std::vector<CorpusEntry>& all);
// Entries run in parallel; results are ordered by id.
CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries, const std::vector<CorpusEntry>& all,
                         unsigned threads = 0);

}  // namespace fibdiff
