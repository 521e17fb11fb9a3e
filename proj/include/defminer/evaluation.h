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


// Rule-set evaluation against gold relevance labels, weighted precision,
// rule selection, and definitor statistics induced from known definitions.

#ifndef DEFMINER_EVALUATION_H_
#define DEFMINER_EVALUATION_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "defminer/analytics.h"
#include "defminer/corpus_io.h"
#include "defminer/extraction.h"
#include "defminer/rule_engine.h"

namespace defminer {

struct GoldLabel {
  std::string doc_id;
  std::string fingerprint;  // normalize_text of the sentence
  bool relevant = false;
};

// Keyed by fingerprint. CSV with header doc_id,fingerprint,relevant; the
// fingerprint column is normalized on load. Duplicate fingerprints and bad
// relevance values throw DataError.
class GoldSet {
 public:
  static GoldSet read(std::istream &in);
  static GoldSet load(const std::filesystem::path &path);

  void add(GoldLabel label);
  const GoldLabel *find(std::string_view fingerprint) const;
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<std::string, GoldLabel, std::less<>> labels_;
};

struct RuleEvaluation {
  std::string rule_set_id;
  std::string observation;
  int retrieved = 0;
  int relevant = 0;

  // relevant / retrieved; nullopt when nothing was retrieved.
  std::optional<double> precision() const;
};

struct EvaluationSummary {
  std::string rule_set_id;
  std::vector<RuleEvaluation> per_observation;
  double mean_relevant = 0.0;
  std::optional<double> weighted_precision;  // nullopt when nothing retrieved

  int total_retrieved() const;
  int total_relevant() const;
};

// Sum relevant / sum retrieved. Throws DataError on an empty list or when
// nothing was retrieved.
double weighted_precision(const std::vector<RuleEvaluation> &evals);
// Sum relevant / number of observations; 0 for an empty list.
double mean_relevant(const std::vector<RuleEvaluation> &evals);

EvaluationSummary summarize(std::string rule_set_id, std::vector<RuleEvaluation> evals);

struct RuleSetSpec {
  std::string id;
  std::set<std::string> rule_ids;
};

// Parses "id=rule,rule". Without "id=" the joined rule ids name the set.
RuleSetSpec parse_rule_set(std::string_view text);

// Copy of `catalog` where retrieval rules (definitor, complete-definition,
// hyponym-core) are enabled iff listed; other classes keep their state.
// Unknown ids throw DataError.
RuleCatalog restrict_catalog(const RuleCatalog &catalog, const std::set<std::string> &rule_ids);

// For each observation term: retrieved = distinct sentences hit by the rule
// set, relevant = those labeled relevant. Unlabeled hits throw DataError
// listing every missing fingerprint.
EvaluationSummary evaluate_rule_set(const RuleSetSpec &rule_set,
                                    const std::vector<std::string> &observations,
                                    const AnnotatedCorpus &corpus, const RuleCatalog &catalog,
                                    const Stopwords &stopwords, const GoldSet &gold);

// Aggregate counts, one CSV row per (observation, rule set):
// observation,rule_set,retrieved,relevant. Rule sets keep first-seen order.
std::vector<EvaluationSummary> read_count_table(std::istream &in);
std::vector<EvaluationSummary> load_count_table(const std::filesystem::path &path);

struct Candidate {
  RuleSetSpec rule_set;
  EvaluationSummary summary;
};

struct Selection {
  std::optional<std::string> selected;  // rule set id
  std::vector<std::string> diagnostics;
};

// Drops candidates below the floor. Exclusive: the survivor with the most
// relevant results. Otherwise: the survivor whose rule set is the union of
// all survivors' sets, if it clears the floor and has at least every other
// survivor's relevant total; failing that, the survivor with the most
// relevant results.
Selection rank_and_select(const std::vector<Candidate> &candidates,
                          double precision_floor = 0.65, bool exclusive = false);

// One row per observation, column triples per rule set, then a MEAN row.
std::string evaluation_report_csv(const std::vector<EvaluationSummary> &summaries,
                                  bool decimal_comma = false);

struct InductionEntry {
  std::string term;
  std::string sentence;
};

struct InductionReport {
  FreqTable definitors;
  FreqTable genus_patterns;
  FreqTable between_words;
  int analyzed = 0;
  int skipped = 0;  // sentences not containing the term
  std::vector<std::string> warnings;
};

inline constexpr int kInductionTarget = 600;

// Reads CSV with header term,sentence.
std::vector<InductionEntry> read_induction_entries(std::istream &in);

// Locates the term, takes the first AUX/VERB after it as the definitor
// head (anything skipped is "between" words) plus up to two following
// AUX/VERB/ADP/PART tokens, and records the UPOS sequence of the noun
// phrase that follows. Warns below kInductionTarget entries.
InductionReport induce_rule_statistics(const std::vector<InductionEntry> &entries,
                                       const Lexicon &lexicon);

std::string induction_report_csv(const InductionReport &report);

}  // namespace defminer

#endif  // DEFMINER_EVALUATION_H_
