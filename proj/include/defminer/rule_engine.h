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

// Rule catalog and token-level pattern matcher.
//
// A rule pattern is a sequence of elements written in a small language:
//
//   <TERM>               the definiendum, bound to the target term at match
//                        time; may carry its acronym ("artificial
//                        intelligence ai")
//   <ACR>                the term's acronym, one token
//   <W:min,max>          any min..max words
//   <POS:TAG|TAG:min,max>  min..max tokens whose UPOS is one of the tags
//   <ART> <ART:min,max>  articles (a, an, the)
//   <BOS>                sentence start (zero width)
//   word                 literal; consecutive literals form one element
//
// Literals match a token's surface or lemma, so "be" covers "is"/"are" and
// "refer to" covers "refers to". Matching runs over the content view of a
// sentence, i.e. with punctuation tokens removed.

#ifndef DEFMINER_RULE_ENGINE_H_
#define DEFMINER_RULE_ENGINE_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defminer/corpus_io.h"

namespace defminer {

enum class RuleKind { kTopDown, kBottomUp };
enum class RuleFamily { kDefinition, kHyponym };
enum class RuleClass {
  kDefinitionStarting,
  kDefinitor,
  kDefinitorFollowing,
  kGenusStructure,
  kCompleteDefinition,
  kHyponymCore,
  kHyponymStructure,
  kSynonymousStructure,
};

std::string_view rule_kind_name(RuleKind kind);
std::string_view rule_family_name(RuleFamily family);
std::string_view rule_class_name(RuleClass cls);

// Hyponym-core and hyponym-structure belong to the Hyponym family, every
// other class to the Definition family.
bool class_belongs_to(RuleClass cls, RuleFamily family);

struct PatternElement {
  enum class Kind { kLiteral, kTerm, kAcronym, kPos, kWildcard, kArticle, kSentenceStart };

  Kind kind = Kind::kLiteral;
  std::vector<std::string> words;  // kLiteral
  std::vector<Upos> tags;          // kPos
  int min = 1;
  int max = 1;

  bool operator==(const PatternElement &) const = default;
};

struct PatternSpec {
  std::vector<PatternElement> elements;

  // Throws DataError on unknown element syntax or bad repetition bounds
  // (0 <= min <= max <= 5).
  static PatternSpec parse(std::string_view text);
  std::string str() const;

  bool operator==(const PatternSpec &) const = default;
};

struct Rule {
  std::string id;
  RuleKind kind = RuleKind::kTopDown;
  RuleFamily family = RuleFamily::kDefinition;
  RuleClass cls = RuleClass::kDefinitor;
  PatternSpec pattern;
  bool enabled = true;
};

class RuleCatalog {
 public:
  // Throws DataError on a duplicate id or a class outside the family.
  void add(Rule rule);

  const std::vector<Rule> &rules() const { return rules_; }
  const Rule *find(std::string_view id) const;
  // Returns false when no rule has this id.
  bool set_enabled(std::string_view id, bool enabled);
  std::vector<const Rule *> enabled_in(RuleClass cls) const;
  bool has_enabled(RuleClass cls) const;

  const std::vector<std::string> &warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<Rule> rules_;
  std::vector<std::string> warnings_;
};

// Tab-separated records "id kind family class pattern". Lines starting with
// '#' and a header line starting with "id" are ignored. An empty file gives
// an empty catalog carrying a warning.
RuleCatalog read_rule_catalog(std::istream &in);
RuleCatalog load_rule_catalog(const std::filesystem::path &path);

// The target term as the matcher sees it.
struct TermSpec {
  std::vector<std::string> words;
  std::string acronym;         // initials of all words; empty if unusable
  bool acronym_alone = false;  // bare acronym also binds <TERM>

  // `term` is normalized here. The acronym needs >= 2 words whose initials
  // are ASCII letters, and at most 6 of them.
  static TermSpec make(std::string_view term, bool acronym_alone = false);
  std::string str() const;
};

// Half-open range of token positions (0-based) in Sentence::tokens.
struct Span {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool operator==(const Span &) const = default;
  auto operator<=>(const Span &) const = default;
};

// Sentence with punctuation removed. positions[i] is the token position of
// content token i.
struct ContentView {
  std::vector<const Token *> tokens;
  std::vector<int> positions;

  static ContentView of(const Sentence &sentence);
  static ContentView of(const Sentence &sentence, Span span);
  int size() const { return static_cast<int>(tokens.size()); }
};

// Match in content coordinates: element i covers `lengths[i]` tokens.
struct RawMatch {
  int begin = 0;
  int end = 0;
  std::vector<int> lengths;

  bool operator==(const RawMatch &) const = default;
};

struct Match {
  std::string rule_id;
  const Sentence *sentence = nullptr;
  Span whole;
  std::optional<Span> definiendum;
  std::optional<Span> definitor;
  std::optional<Span> definiens;
  std::optional<Span> hypernym;
  std::optional<Span> hyponym_list;
};

class Matcher {
 public:
  explicit Matcher(Rule rule);

  const Rule &rule() const { return rule_; }
  const std::string &rule_id() const { return rule_.id; }

  // Non-overlapping matches scanning left to right. At each start the
  // longest match wins; among bindings with the same extent, earlier
  // elements take as many tokens as they can. Empty matches are not
  // reported.
  std::vector<RawMatch> scan(const ContentView &view, const TermSpec &term) const;

  // Longest non-empty match starting exactly at `start`.
  std::optional<RawMatch> match_at(const ContentView &view, const TermSpec &term,
                                   int start) const;

  // True when the whole pattern can cover exactly [begin, end).
  bool matches_exactly(const ContentView &view, const TermSpec &term, int begin,
                       int end) const;

  // Turns a raw match into named token spans according to the rule family.
  Match to_match(const Sentence &sentence, const ContentView &view,
                 const RawMatch &raw) const;

 private:
  void candidate_lengths(std::size_t element, const ContentView &view,
                         const TermSpec &term, int pos, std::vector<int> &out) const;
  std::vector<char> reachable(const ContentView &view, const TermSpec &term,
                              int start) const;
  RawMatch reconstruct(const ContentView &view, const TermSpec &term, int start,
                       int end) const;

  Rule rule_;
};

Matcher compile_rule(const Rule &rule);

std::vector<Match> match_sentence(const Matcher &matcher, const Sentence &sentence,
                                  const TermSpec &term);
std::vector<Match> match_sentence(const Matcher &matcher, const Sentence &sentence,
                                  std::string_view term);

// Words accepted by the article element.
bool is_article(std::string_view word);

}  // namespace defminer

#endif  // DEFMINER_RULE_ENGINE_H_
