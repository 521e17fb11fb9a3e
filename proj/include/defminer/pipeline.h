// Copyright 2026 The defminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// End-to-end runs behind the command-line tool: configuration, input
// loading, the define pipeline and the per-subcommand drivers.

#ifndef DEFMINER_PIPELINE_H_
#define DEFMINER_PIPELINE_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defminer/analytics.h"
#include "defminer/corpus_io.h"
#include "defminer/errors.h"
#include "defminer/evaluation.h"
#include "defminer/extraction.h"
#include "defminer/graphs.h"
#include "defminer/rule_engine.h"

namespace defminer {

inline constexpr const char *kVersion = "0.1.0";

struct RunConfig {
  std::filesystem::path corpus_path;
  std::string corpus_format;  // jsonl, csv, or empty to use the extension
  std::optional<std::filesystem::path> conllu_path;
  std::string term;
  std::filesystem::path rule_catalog_path;
  std::filesystem::path stopword_path;
  std::filesystem::path lexicon_path;
  std::filesystem::path output_dir = ".";
  int min_cooccurrence = 2;
  int network_min_weight = 1;
  int cluster_threshold = 1;
  double precision_floor = 0.65;
  bool decimal_comma = false;
};

// Directory holding the shipped catalog, stopword list and lexicon.
std::filesystem::path default_data_dir();

// Fills empty catalog/stopword/lexicon paths from default_data_dir().
void apply_defaults(RunConfig &config);

// Flat "key = value" lines; '#' starts a comment. Keys are the RunConfig
// field names. Throws UsageError on unknown keys or bad values.
std::map<std::string, std::string> read_config_file(std::istream &in);
std::map<std::string, std::string> load_config_file(const std::filesystem::path &path);
void set_config_value(RunConfig &config, const std::string &key, const std::string &value);

// Checks thresholds (UsageError) and that input files exist (DataError
// naming the config key).
void validate_config(const RunConfig &config, bool needs_corpus = true, bool needs_term = true);

struct Inputs {
  AnnotatedCorpus corpus;
  RuleCatalog catalog;
  Stopwords stopwords;
  std::string catalog_sha256;
  std::string stopwords_sha256;
  std::string lexicon_sha256;  // empty when tags come from CoNLL-U
};

Inputs load_inputs(const RunConfig &config);

struct DefineResult {
  std::vector<DefinitionRecord> definitions;
  std::vector<HyponymRecord> hyponyms;
  std::vector<SynonymRecord> synonyms;
  ExtractionDiagnostics diagnostics;
  FreqTable genera;
  FreqTable features;
  CooccurrenceTable cooccurrence;
  OntologyGraph ontology{""};
  DefinitionNetwork network;
  Clustering clusters;
  ObservationProfile profile;
};

DefineResult run_define(const RunConfig &config, const Inputs &inputs);

std::string definitions_csv(const std::vector<DefinitionRecord> &defs);
std::string hyponyms_csv(const std::vector<HyponymRecord> &records);
std::string synonyms_csv(const std::vector<SynonymRecord> &records);

// File name -> contents for every define output except the manifest.
std::map<std::string, std::string> define_outputs(const DefineResult &result,
                                                  const RunConfig &config);

// run_manifest.json. The timestamp is the only field that varies between
// identical runs.
std::string run_manifest(const RunConfig &config, const Inputs &inputs,
                         const DefineResult &result, const std::string &timestamp);

// Writes all files into a staging directory inside output_dir, then moves
// them into place. On failure nothing new is left behind.
void write_outputs_atomically(const std::filesystem::path &output_dir,
                              const std::map<std::string, std::string> &files);

// Runs `fn`, prefixing any error message with the stage name. The error
// keeps its type so the exit code is preserved.
template <typename Fn>
auto run_stage(const char *stage, Fn &&fn) -> decltype(fn());

struct CompareEntry {
  std::string term;
  int definitions = 0;
  double cohesion = 0.0;
  double genus_entropy = 0.0;
  std::vector<FreqEntry> top_genera;
  std::vector<FreqEntry> top_features;
  bool fuzzily_defined = false;
};

// Flags the entry with strictly the lowest cohesion as fuzzily defined.
// Throws UsageError for fewer than two entries.
std::vector<CompareEntry> compare_terms(const std::vector<RunConfig> &configs);
CompareEntry compare_entry(const std::string &term, const DefineResult &result);
void flag_fuzzy(std::vector<CompareEntry> &entries);
std::string compare_json(const std::vector<CompareEntry> &entries);
std::string compare_csv(const std::vector<CompareEntry> &entries, bool decimal_comma = false);

// ---------------------------------------------------------------------------

template <typename Fn>
auto run_stage(const char *stage, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const UsageError &e) {
    throw UsageError(std::string(stage) + ": " + e.what());
  } catch (const DataError &e) {
    throw DataError(std::string(stage) + ": " + e.what());
  }
}

}  // namespace defminer

#endif  // DEFMINER_PIPELINE_H_
