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

// Corpus loading, CoNLL-U parsing, text normalization and the fallback
// heuristic tagger. Everything downstream consumes the Sentence type
// produced here.

#ifndef DEFMINER_CORPUS_IO_H_
#define DEFMINER_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "defminer/exec.h"

namespace defminer {

// The 17 universal part-of-speech categories.
enum class Upos {
  kAdj,
  kAdp,
  kAdv,
  kAux,
  kCconj,
  kDet,
  kIntj,
  kNoun,
  kNum,
  kPart,
  kPron,
  kPropn,
  kPunct,
  kSconj,
  kSym,
  kVerb,
  kX,
};

// "NOUN" -> kNoun. Anything outside the closed set maps to kX.
Upos upos_from_string(std::string_view tag);
std::string_view upos_name(Upos tag);

inline bool is_nominal(Upos tag) { return tag == Upos::kNoun || tag == Upos::kPropn; }

struct Token {
  std::string surface;
  std::string lemma;
  Upos upos = Upos::kX;
  int index = 0;  // 1-based position in the sentence
};

struct Sentence {
  std::vector<Token> tokens;
  std::string raw_text;
  std::string doc_id;
  int sent_index = 0;
};

struct Document {
  std::string doc_id;
  std::string abstract_text;
  std::vector<std::pair<std::string, double>> subject_areas;
  std::optional<int> year;
};

using Corpus = std::vector<Document>;

enum class CorpusFormat { kJsonl, kCsv };

// Parses "jsonl" / "csv". Throws UsageError otherwise.
CorpusFormat corpus_format_from_string(std::string_view name);
// Guesses from the file extension; defaults to JSON lines.
CorpusFormat corpus_format_from_path(const std::filesystem::path &path);

// Reads one Document per record. Records need `doc_id` and `abstract`;
// `year` and `subject_areas` are optional. In CSV the subject areas are
// written as "area=count;area=count". Throws ParseError for malformed
// records and DataError for duplicate ids.
Corpus read_corpus(std::istream &in, CorpusFormat format);
Corpus load_corpus(const std::filesystem::path &path, CorpusFormat format);

// Lowercases ASCII, deletes periods and apostrophes except a sentence-final
// period, keeps intra-word hyphens, turns any other ASCII punctuation into
// whitespace and collapses whitespace runs. Non-ASCII bytes are kept.
// Idempotent.
std::string normalize_text(std::string_view raw);

// Splits on . ! ? followed by whitespace and an uppercase letter, or by the
// end of the text. "e.g.", "i.e." and "etc." never end a sentence.
std::vector<std::string> segment_sentences(std::string_view abstract_text);

// Lowercased word and punctuation tokens. The word tokens, joined by single
// spaces, equal normalize_text(raw) without its final period.
std::vector<std::string> tokenize(std::string_view raw);

// Parses CoNLL-U. Uses columns ID, FORM, LEMMA and UPOS; skips multiword
// ranges and empty nodes. `# newdoc id = X` or `# doc_id = X` comments set
// the document id of the sentences that follow; `# text = ...` fills
// raw_text. Throws ParseError on a wrong column count or a bad ID.
std::vector<Sentence> parse_conllu(std::string_view text);
std::string write_conllu(const std::vector<Sentence> &sentences);

// Lowercases surface and lemma and applies the normalization rules to each
// token, so CoNLL-U input lines up with normalized text.
void normalize_tokens(Sentence &sentence);

// Word -> (UPOS, optional lemma) map used by the heuristic tagger.
class Lexicon {
 public:
  struct Entry {
    Upos upos;
    std::string lemma;  // empty: derive by rule
  };

  // Tab-separated "word UPOS [lemma]" lines; '#' starts a comment.
  static Lexicon load(const std::filesystem::path &path);
  static Lexicon read(std::istream &in);

  void add(std::string word, Upos upos, std::string lemma = {});
  const Entry *find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Entry> entries_;
};

// Rule-based tagger for whitespace-separated, normalized input. Precedence:
// lexicon, suffix rules, closed-class words, NOUN.
Sentence tag_heuristic(std::string_view sentence_text, const Lexicon &lexicon);

// Plural stripping with an exception list: "applications" -> "application",
// "technologies" -> "technology", "analysis" unchanged.
std::string singular_form(std::string_view noun);

// Suffix stripping for verb forms: "reasoning" -> "reason",
// "stopped" -> "stop", "extracts" -> "extract".
std::string verb_lemma(std::string_view verb);

// A corpus segmented into tagged sentences.
struct AnnotatedCorpus {
  Corpus documents;
  std::vector<Sentence> sentences;  // ordered by document, then sent_index
  bool heuristic_tags = true;
};

// Segments and tags every abstract. Documents are processed in parallel;
// the output order is the corpus order.
AnnotatedCorpus annotate_corpus(Corpus corpus, const Lexicon &lexicon,
                                Exec exec = Exec::kParallel);

// Uses pre-tagged sentences instead of the heuristic tagger. Sentence
// doc_ids must name documents of the corpus; throws DataError otherwise.
AnnotatedCorpus annotate_corpus(Corpus corpus, std::vector<Sentence> conllu);

// Tags one raw sentence with the heuristic tagger.
Sentence analyze_sentence(std::string_view raw, const Lexicon &lexicon,
                          std::string doc_id = {}, int sent_index = 0);

}  // namespace defminer

#endif  // DEFMINER_CORPUS_IO_H_
