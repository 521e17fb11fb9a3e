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

#include "defminer/extraction.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "defminer/errors.h"

namespace defminer {

// ---------------------------------------------------------------------------
// Stopwords

Stopwords::Stopwords(std::vector<std::string> words) {
  for (std::string &w : words) words_.insert(std::move(w));
}

Stopwords Stopwords::read(std::istream &in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string w;
    if (fields >> w && w[0] != '#') words.push_back(w);
  }
  return Stopwords(std::move(words));
}

Stopwords Stopwords::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword list: " + path.string());
  return read(in);
}

bool Stopwords::contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

// ---------------------------------------------------------------------------
// Genus, features, coordination

std::string span_text(const Sentence &sentence, Span span) {
  std::string out;
  for (int i = span.begin; i < span.end; ++i) {
    const Token &t = sentence.tokens[i];
    if (t.upos == Upos::kPunct) continue;
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

std::optional<GenusParse> parse_genus(const Sentence &sentence, int definitor_end) {
  const auto &tokens = sentence.tokens;
  const int n = static_cast<int>(tokens.size());
  GenusParse parse;
  int p = definitor_end;
  while (p < n && (tokens[p].upos == Upos::kDet || tokens[p].upos == Upos::kAdj ||
                   tokens[p].upos == Upos::kAdv)) {
    if (tokens[p].upos != Upos::kDet) parse.dropped_modifiers.push_back(tokens[p].surface);
    ++p;
  }
  if (p >= n || !is_nominal(tokens[p].upos)) return std::nullopt;

  const int head_begin = p;
  while (p < n && is_nominal(tokens[p].upos)) ++p;
  int end = p;

  if (end < n && tokens[end].surface == "of") {
    int q = end + 1;
    if (q < n && tokens[q].upos == Upos::kDet) ++q;
    while (q < n && tokens[q].upos == Upos::kAdj) ++q;
    int r = q;
    while (r < n && is_nominal(tokens[r].upos)) ++r;
    if (r > q) end = r;
  }
  parse.span = Span{head_begin, end};
  return parse;
}

std::vector<std::string> extract_features(const Sentence &sentence, int genus_end,
                                          const Stopwords &stopwords) {
  const auto &tokens = sentence.tokens;
  const int n = static_cast<int>(tokens.size());
  std::vector<std::string> features;
  std::set<std::string> seen;
  auto add = [&](const std::string &f) {
    if (f.empty() || stopwords.contains(f)) return;
    if (seen.insert(f).second) features.push_back(f);
  };
  auto single = [&](const Token &t) {
    if (stopwords.contains(t.surface) || stopwords.contains(t.lemma)) return;
    add(t.lemma.empty() ? t.surface : t.lemma);
  };

  int i = std::max(genus_end, 0);
  while (i < n) {
    const Token &t = tokens[i];
    if (t.upos == Upos::kAdj || is_nominal(t.upos)) {
      int j = i;
      while (j < n && tokens[j].upos == Upos::kAdj) ++j;
      int k = j;
      while (k < n && is_nominal(tokens[k].upos)) ++k;
      if (k == j) {
        for (int a = i; a < j; ++a) single(tokens[a]);
        i = j;
        continue;
      }
      int begin = i;
      while (begin < k && stopwords.contains(tokens[begin].surface)) ++begin;
      if (k - begin == 1) {
        single(tokens[begin]);
      } else if (k - begin > 1) {
        add(span_text(sentence, Span{begin, k}));
      }
      i = k;
      continue;
    }
    if (t.upos == Upos::kVerb || t.upos == Upos::kAdv) single(t);
    ++i;
  }
  return features;
}

std::vector<Span> split_coordination_spans(const Sentence &sentence, Span phrase) {
  const auto &tokens = sentence.tokens;
  std::vector<Span> pieces;
  auto close = [&](int a, int b) {
    while (a < b && (tokens[a].upos == Upos::kDet || tokens[a].upos == Upos::kPunct)) ++a;
    while (b > a && tokens[b - 1].upos == Upos::kPunct) --b;
    if (b > a && tokens[b - 1].surface == "etc") --b;
    while (b > a && tokens[b - 1].upos == Upos::kPunct) --b;
    if (b > a) pieces.push_back(Span{a, b});
  };
  int start = phrase.begin;
  for (int i = phrase.begin; i < phrase.end; ++i) {
    const std::string &w = tokens[i].surface;
    bool separator = (tokens[i].upos == Upos::kPunct && (w == "," || w == ";")) ||
                     w == "and" || w == "or";
    if (separator) {
      close(start, i);
      start = i + 1;
    }
  }
  close(start, phrase.end);
  return pieces;
}

std::vector<std::string> split_coordination(const Sentence &sentence, Span phrase,
                                            const Stopwords &stopwords) {
  std::vector<std::string> out;
  for (Span piece : split_coordination_spans(sentence, phrase)) {
    bool content = false;
    for (int i = piece.begin; i < piece.end && !content; ++i) {
      const Token &t = sentence.tokens[i];
      content = t.upos != Upos::kPunct && !stopwords.contains(t.surface);
    }
    if (content) out.push_back(span_text(sentence, piece));
  }
  return out;
}

void ExtractionDiagnostics::merge(const ExtractionDiagnostics &o) {
  definition_candidates += o.definition_candidates;
  start_rejected += o.start_rejected;
  genus_structure_rejected += o.genus_structure_rejected;
  genus_not_found += o.genus_not_found;
  duplicate_definitions += o.duplicate_definitions;
  dropped_modifiers.insert(dropped_modifiers.end(), o.dropped_modifiers.begin(),
                           o.dropped_modifiers.end());
  hyponym_matches += o.hyponym_matches;
  hyponym_without_hypernym += o.hyponym_without_hypernym;
  hyponym_pieces_rejected += o.hyponym_pieces_rejected;
}

// ---------------------------------------------------------------------------
// Extractor

namespace {

// Content offsets of the <TERM> element in a raw match, or {-1, -1}.
std::pair<int, int> term_extent(const Matcher &matcher, const RawMatch &raw) {
  const auto &elements = matcher.rule().pattern.elements;
  int offset = raw.begin;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].kind == PatternElement::Kind::kTerm) {
      return {offset, offset + raw.lengths[i]};
    }
    offset += raw.lengths[i];
  }
  return {-1, -1};
}

std::string join_content(const ContentView &view, int a, int b) {
  std::string out;
  for (int i = a; i < b; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += view.tokens[i]->surface;
  }
  return out;
}

template <typename Fn>
auto per_sentence(const AnnotatedCorpus &corpus, Exec exec, Fn fn) {
  using Result = decltype(fn(corpus.sentences.front()));
  std::vector<Result> results(corpus.sentences.size());
  const long n = static_cast<long>(corpus.sentences.size());
  if (exec == Exec::kSerial) {
    for (long i = 0; i < n; ++i) results[i] = fn(corpus.sentences[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) results[i] = fn(corpus.sentences[i]);
  }
  return results;
}

}  // namespace

Extractor::Extractor(const RuleCatalog &catalog, std::string_view term,
                     const Stopwords &stopwords)
    : stopwords_(&stopwords) {
  bool acronym_alone = catalog.has_enabled(RuleClass::kSynonymousStructure);
  term_ = TermSpec::make(term, acronym_alone);
  if (term_.acronym_alone && stopwords.contains(term_.acronym)) term_.acronym_alone = false;

  for (const Rule &rule : catalog.rules()) {
    if (!rule.enabled) continue;
    switch (rule.cls) {
      case RuleClass::kDefinitionStarting:
        rules_.starting.emplace_back(rule);
        break;
      case RuleClass::kDefinitor:
      case RuleClass::kCompleteDefinition:
        rules_.definitors.emplace_back(rule);
        break;
      case RuleClass::kDefinitorFollowing:
        rules_.following.emplace_back(rule);
        break;
      case RuleClass::kGenusStructure:
        rules_.genus_structure.emplace_back(rule);
        break;
      case RuleClass::kHyponymCore:
        rules_.hyponym_core.emplace_back(rule);
        break;
      case RuleClass::kHyponymStructure:
        rules_.hyponym_structure.emplace_back(rule);
        break;
      case RuleClass::kSynonymousStructure:
        break;  // governs acronym binding, see above
    }
  }
}

std::vector<int> Extractor::start_positions(const ContentView &view) const {
  std::vector<int> starts;
  for (const Matcher &m : rules_.starting) {
    for (const RawMatch &raw : m.scan(view, term_)) {
      int begin = term_extent(m, raw).first;
      if (begin >= 0) starts.push_back(begin);
    }
  }
  return starts;
}

std::vector<DefinitionRecord> Extractor::definitions_in(const Sentence &sentence,
                                                        ExtractionDiagnostics *diag) const {
  ExtractionDiagnostics local;
  ContentView view = ContentView::of(sentence);
  const int n = view.size();
  std::vector<int> starts = start_positions(view);

  struct Candidate {
    int term_begin, term_end, definitor_end;
    const Matcher *rule;
  };
  std::vector<Candidate> candidates;
  for (const Matcher &m : rules_.definitors) {
    for (const RawMatch &raw : m.scan(view, term_)) {
      auto [tb, te] = term_extent(m, raw);
      if (tb < 0) continue;
      ++local.definition_candidates;
      if (m.rule().cls == RuleClass::kDefinitor && !rules_.starting.empty() &&
          std::find(starts.begin(), starts.end(), tb) == starts.end()) {
        ++local.start_rejected;
        continue;
      }
      candidates.push_back({tb, te, raw.end, &m});
    }
  }
  // One definition per definiendum; prefer the longest definitor.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate &a, const Candidate &b) {
                     if (a.term_begin != b.term_begin) return a.term_begin < b.term_begin;
                     return a.definitor_end > b.definitor_end;
                   });

  std::vector<DefinitionRecord> records;
  int done_term = -1;
  for (const Candidate &c : candidates) {
    if (c.term_begin == done_term) continue;
    int p = c.definitor_end;
    for (int round = 0; round < 3 && p < n; ++round) {
      int best = p;
      for (const Matcher &f : rules_.following) {
        if (auto m = f.match_at(view, term_, p)) best = std::max(best, m->end);
      }
      if (best == p) break;
      p = best;
    }
    if (!rules_.genus_structure.empty()) {
      bool shaped = std::any_of(rules_.genus_structure.begin(), rules_.genus_structure.end(),
                                [&](const Matcher &g) { return g.match_at(view, term_, p).has_value(); });
      if (!shaped) {
        ++local.genus_structure_rejected;
        continue;
      }
    }
    int token_pos = p < n ? view.positions[p] : static_cast<int>(sentence.tokens.size());
    std::optional<GenusParse> genus = parse_genus(sentence, token_pos);
    if (!genus) {
      ++local.genus_not_found;
      continue;
    }
    local.dropped_modifiers.insert(local.dropped_modifiers.end(),
                                   genus->dropped_modifiers.begin(),
                                   genus->dropped_modifiers.end());
    DefinitionRecord rec;
    rec.doc_id = sentence.doc_id;
    rec.sent_index = sentence.sent_index;
    rec.definiendum = join_content(view, c.term_begin, c.term_end);
    rec.definitor = join_content(view, c.term_end, c.definitor_end);
    rec.definition_text = join_content(view, c.term_begin, n);
    rec.genus = span_text(sentence, genus->span);
    rec.features = extract_features(sentence, genus->span.end, *stopwords_);
    rec.rule_id = c.rule->rule_id();
    records.push_back(std::move(rec));
    done_term = c.term_begin;
  }
  if (diag) diag->merge(local);
  return records;
}

std::vector<HyponymRecord> Extractor::hyponyms_in(const Sentence &sentence,
                                                  ExtractionDiagnostics *diag) const {
  ExtractionDiagnostics local;
  ContentView view = ContentView::of(sentence);
  std::vector<HyponymRecord> records;
  std::set<std::pair<Span, Span>> seen;
  const std::string term_text = term_.str();

  for (const Matcher &m : rules_.hyponym_core) {
    for (const RawMatch &raw : m.scan(view, term_)) {
      Match match = m.to_match(sentence, view, raw);
      if (!match.hyponym_list) continue;
      ++local.hyponym_matches;
      if (!match.hypernym) {
        ++local.hyponym_without_hypernym;
        continue;
      }
      if (!seen.insert({*match.hypernym, *match.hyponym_list}).second) continue;
      std::string hypernym = singular_form(sentence.tokens[match.hypernym->begin].surface);

      for (Span piece : split_coordination_spans(sentence, *match.hyponym_list)) {
        ContentView piece_view = ContentView::of(sentence, piece);
        bool content = false;
        for (const Token *t : piece_view.tokens) content |= !stopwords_->contains(t->surface);
        if (!content) continue;
        if (!rules_.hyponym_structure.empty()) {
          bool shaped = std::any_of(
              rules_.hyponym_structure.begin(), rules_.hyponym_structure.end(),
              [&](const Matcher &s) {
                return s.matches_exactly(piece_view, term_, 0, piece_view.size());
              });
          if (!shaped) {
            ++local.hyponym_pieces_rejected;
            continue;
          }
        }
        std::string hyponym = span_text(sentence, piece);
        if (hyponym == hypernym || hyponym == term_text) continue;
        HyponymRecord rec;
        rec.doc_id = sentence.doc_id;
        rec.sent_index = sentence.sent_index;
        rec.term = term_text;
        rec.hyponym = std::move(hyponym);
        rec.hypernym = hypernym;
        rec.sentence_text = sentence.raw_text;
        rec.rule_id = m.rule_id();
        records.push_back(std::move(rec));
      }
    }
  }
  if (diag) diag->merge(local);
  return records;
}

std::optional<RetrievalHit> Extractor::retrieve(const Sentence &sentence) const {
  ContentView view = ContentView::of(sentence);
  std::vector<int> starts;
  bool starts_computed = false;
  RetrievalHit hit;
  for (const Matcher &m : rules_.definitors) {
    for (const RawMatch &raw : m.scan(view, term_)) {
      int tb = term_extent(m, raw).first;
      if (m.rule().cls == RuleClass::kDefinitor && !rules_.starting.empty()) {
        if (!starts_computed) {
          starts = start_positions(view);
          starts_computed = true;
        }
        if (std::find(starts.begin(), starts.end(), tb) == starts.end()) continue;
      }
      hit.rule_ids.push_back(m.rule_id());
      break;
    }
  }
  for (const Matcher &m : rules_.hyponym_core) {
    if (!m.scan(view, term_).empty()) hit.rule_ids.push_back(m.rule_id());
  }
  if (hit.rule_ids.empty()) return std::nullopt;
  hit.doc_id = sentence.doc_id;
  hit.sent_index = sentence.sent_index;
  hit.fingerprint = normalize_text(sentence.raw_text);
  return hit;
}

std::vector<DefinitionRecord> Extractor::definitions(const AnnotatedCorpus &corpus,
                                                     ExtractionDiagnostics *diag,
                                                     Exec exec) const {
  if (corpus.sentences.empty()) return {};
  struct Out {
    std::vector<DefinitionRecord> records;
    ExtractionDiagnostics diag;
  };
  auto results = per_sentence(corpus, exec, [&](const Sentence &s) {
    Out o;
    o.records = definitions_in(s, &o.diag);
    return o;
  });
  std::vector<DefinitionRecord> records;
  std::set<std::string> texts;
  ExtractionDiagnostics total;
  for (Out &o : results) {
    total.merge(o.diag);
    for (DefinitionRecord &r : o.records) {
      if (!texts.insert(r.definition_text).second) {
        ++total.duplicate_definitions;
        continue;
      }
      records.push_back(std::move(r));
    }
  }
  if (diag) diag->merge(total);
  return records;
}

std::vector<HyponymRecord> Extractor::hyponyms(const AnnotatedCorpus &corpus,
                                               ExtractionDiagnostics *diag, Exec exec) const {
  if (corpus.sentences.empty()) return {};
  struct Out {
    std::vector<HyponymRecord> records;
    ExtractionDiagnostics diag;
  };
  auto results = per_sentence(corpus, exec, [&](const Sentence &s) {
    Out o;
    o.records = hyponyms_in(s, &o.diag);
    return o;
  });
  std::vector<HyponymRecord> records;
  ExtractionDiagnostics total;
  for (Out &o : results) {
    total.merge(o.diag);
    for (HyponymRecord &r : o.records) records.push_back(std::move(r));
  }
  if (diag) diag->merge(total);
  return records;
}

std::vector<RetrievalHit> Extractor::retrieve(const AnnotatedCorpus &corpus, Exec exec) const {
  if (corpus.sentences.empty()) return {};
  auto results = per_sentence(corpus, exec, [&](const Sentence &s) { return retrieve(s); });
  std::vector<RetrievalHit> hits;
  for (auto &h : results) {
    if (h) hits.push_back(std::move(*h));
  }
  return hits;
}

std::vector<DefinitionRecord> extract_definitions(const AnnotatedCorpus &corpus,
                                                  std::string_view term,
                                                  const RuleCatalog &catalog,
                                                  const Stopwords &stopwords,
                                                  ExtractionDiagnostics *diag) {
  return Extractor(catalog, term, stopwords).definitions(corpus, diag);
}

std::vector<HyponymRecord> extract_hyponyms(const AnnotatedCorpus &corpus,
                                            std::string_view term,
                                            const RuleCatalog &catalog,
                                            const Stopwords &stopwords,
                                            ExtractionDiagnostics *diag) {
  return Extractor(catalog, term, stopwords).hyponyms(corpus, diag);
}

std::vector<SynonymRecord> extract_synonyms(const AnnotatedCorpus &corpus,
                                            std::string_view term) {
  TermSpec spec = TermSpec::make(term);
  if (spec.acronym.empty() || corpus.sentences.empty()) return {};
  Rule rule;
  rule.id = "synonym-acronym";
  rule.family = RuleFamily::kDefinition;
  rule.cls = RuleClass::kSynonymousStructure;
  rule.pattern = PatternSpec::parse("<TERM> <ACR>");
  const Matcher matcher(rule);

  auto results = per_sentence(corpus, Exec::kParallel, [&](const Sentence &s) {
    std::vector<SynonymRecord> out;
    ContentView view = ContentView::of(s);
    if (!matcher.scan(view, spec).empty()) {
      out.push_back(SynonymRecord{s.doc_id, s.sent_index, spec.str(), spec.acronym, s.raw_text});
    }
    return out;
  });
  std::vector<SynonymRecord> records;
  for (auto &r : results) {
    for (SynonymRecord &s : r) records.push_back(std::move(s));
  }
  return records;
}

}  // namespace defminer
