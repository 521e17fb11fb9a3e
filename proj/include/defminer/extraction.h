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

// Turns rule matches into definitions (definiendum = genus + distinctive
// features), hyponym/hypernym pairs and acronym synonyms.

#ifndef DEFMINER_EXTRACTION_H_
#define DEFMINER_EXTRACTION_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "defminer/corpus_io.h"
#include "defminer/exec.h"
#include "defminer/rule_engine.h"

namespace defminer {

class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::vector<std::string> words);

  // One word per line; '#' starts a comment.
  static Stopwords read(std::istream &in);
  static Stopwords load(const std::filesystem::path &path);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct DefinitionRecord {
  std::string doc_id;
  int sent_index = 0;
  std::string definiendum;
  std::string definitor;
  std::string definition_text;
  std::string genus;
  std::vector<std::string> features;
  std::string rule_id;
};

struct HyponymRecord {
  std::string doc_id;
  int sent_index = 0;
  std::string term;
  std::string hyponym;
  std::string hypernym;
  std::string sentence_text;
  std::string rule_id;
};

struct SynonymRecord {
  std::string doc_id;
  int sent_index = 0;
  std::string term;
  std::string synonym;
  std::string sentence_text;
};

struct GenusParse {
  Span span;
  std::vector<std::string> dropped_modifiers;  // pre-head adjectives/adverbs
};

// Genus = first noun run after the definitor (determiners and pre-head
// adjectives skipped), extended by a following "of" + DET? ADJ* NOUN+.
// Returns nullopt when no noun follows the skipped modifiers.
std::optional<GenusParse> parse_genus(const Sentence &sentence, int definitor_end);

// Distinctive features after the genus: maximal ADJ* NOUN+ chunks, plus
// single VERB/ADJ/ADV/NOUN lemmas. Multi-word chunks keep their surface
// form. No stopwords, no duplicates, first occurrence order.
std::vector<std::string> extract_features(const Sentence &sentence, int genus_end,
                                          const Stopwords &stopwords);

// Splits a coordinated phrase on commas, semicolons, "and" and "or".
// Leading determiners and a trailing "etc" are trimmed; empty pieces are
// dropped.
std::vector<Span> split_coordination_spans(const Sentence &sentence, Span phrase);
// As above, also dropping pieces made only of stopwords.
std::vector<std::string> split_coordination(const Sentence &sentence, Span phrase,
                                            const Stopwords &stopwords);

// Space-joined content tokens of a span.
std::string span_text(const Sentence &sentence, Span span);

struct ExtractionDiagnostics {
  int definition_candidates = 0;
  int start_rejected = 0;
  int genus_structure_rejected = 0;
  int genus_not_found = 0;
  int duplicate_definitions = 0;
  std::vector<std::string> dropped_modifiers;
  int hyponym_matches = 0;
  int hyponym_without_hypernym = 0;
  int hyponym_pieces_rejected = 0;

  void merge(const ExtractionDiagnostics &other);
};

// A sentence retrieved by at least one retrieval rule (definitor,
// complete-definition or hyponym-core class).
struct RetrievalHit {
  std::string doc_id;
  int sent_index = 0;
  std::string fingerprint;  // normalize_text of the sentence
  std::vector<std::string> rule_ids;
};

// Compiled catalog bound to one target term.
class Extractor {
 public:
  Extractor(const RuleCatalog &catalog, std::string_view term, const Stopwords &stopwords);

  const TermSpec &term() const { return term_; }

  std::vector<DefinitionRecord> definitions_in(const Sentence &sentence,
                                               ExtractionDiagnostics *diag = nullptr) const;
  std::vector<HyponymRecord> hyponyms_in(const Sentence &sentence,
                                         ExtractionDiagnostics *diag = nullptr) const;
  std::optional<RetrievalHit> retrieve(const Sentence &sentence) const;

  // Whole-corpus versions. Sentences are processed in parallel and merged in
  // corpus order; identical definition texts are collapsed to the first.
  std::vector<DefinitionRecord> definitions(const AnnotatedCorpus &corpus,
                                            ExtractionDiagnostics *diag = nullptr,
                                            Exec exec = Exec::kParallel) const;
  std::vector<HyponymRecord> hyponyms(const AnnotatedCorpus &corpus,
                                      ExtractionDiagnostics *diag = nullptr,
                                      Exec exec = Exec::kParallel) const;
  std::vector<RetrievalHit> retrieve(const AnnotatedCorpus &corpus,
                                     Exec exec = Exec::kParallel) const;

 private:
  struct Compiled {
    std::vector<Matcher> starting;
    std::vector<Matcher> definitors;  // definitor + complete-definition
    std::vector<Matcher> following;
    std::vector<Matcher> genus_structure;
    std::vector<Matcher> hyponym_core;
    std::vector<Matcher> hyponym_structure;
  };

  // Content positions where a definition-starting rule binds <TERM>.
  std::vector<int> start_positions(const ContentView &view) const;

  TermSpec term_;
  const Stopwords *stopwords_;
  Compiled rules_;
};

std::vector<DefinitionRecord> extract_definitions(const AnnotatedCorpus &corpus,
                                                  std::string_view term,
                                                  const RuleCatalog &catalog,
                                                  const Stopwords &stopwords,
                                                  ExtractionDiagnostics *diag = nullptr);
std::vector<HyponymRecord> extract_hyponyms(const AnnotatedCorpus &corpus,
                                            std::string_view term,
                                            const RuleCatalog &catalog,
                                            const Stopwords &stopwords,
                                            ExtractionDiagnostics *diag = nullptr);
std::vector<SynonymRecord> extract_synonyms(const AnnotatedCorpus &corpus,
                                            std::string_view term);

}  // namespace defminer

#endif  // DEFMINER_EXTRACTION_H_
