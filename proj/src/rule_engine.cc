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

#include "defminer/rule_engine.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "defminer/errors.h"

namespace defminer {
namespace {

constexpr int kMaxRepeat = 5;

constexpr std::array<std::string_view, 8> kClassNames = {
    "definition-starting", "definitor",        "definitor-following",
    "genus-structure",     "complete-definition", "hyponym-core",
    "hyponym-structure",   "synonymous-structure"};

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.emplace_back(s.substr(start, p == std::string_view::npos ? s.npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string strip_final_period(std::string s) {
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::pair<int, int> parse_bounds(std::string_view text, std::string_view element) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw DataError("bad repetition bound in '" + std::string(element) + "'");
    }
    return v;
  };
  int lo = 0;
  int hi = 0;
  std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) {
    lo = hi = parse_int(text);
  } else {
    lo = parse_int(text.substr(0, comma));
    hi = parse_int(text.substr(comma + 1));
  }
  if (lo < 0 || lo > hi || hi > kMaxRepeat) {
    throw DataError("repetition bounds must satisfy 0 <= min <= max <= 5 in '" +
                    std::string(element) + "'");
  }
  return {lo, hi};
}

}  // namespace

std::string_view rule_kind_name(RuleKind kind) {
  return kind == RuleKind::kTopDown ? "top-down" : "bottom-up";
}

std::string_view rule_family_name(RuleFamily family) {
  return family == RuleFamily::kDefinition ? "Definition" : "Hyponym";
}

std::string_view rule_class_name(RuleClass cls) {
  return kClassNames[static_cast<std::size_t>(cls)];
}

bool class_belongs_to(RuleClass cls, RuleFamily family) {
  bool hyponym_class = cls == RuleClass::kHyponymCore || cls == RuleClass::kHyponymStructure;
  return hyponym_class == (family == RuleFamily::kHyponym);
}

bool is_article(std::string_view word) {
  return word == "a" || word == "an" || word == "the";
}

// ---------------------------------------------------------------------------
// Pattern language

PatternSpec PatternSpec::parse(std::string_view text) {
  PatternSpec spec;
  for (const std::string &piece : split_ws(text)) {
    if (piece.size() >= 2 && piece.front() == '<' && piece.back() == '>') {
      std::string inner = piece.substr(1, piece.size() - 2);
      std::vector<std::string> parts = split_on(inner, ':');
      const std::string name = parts[0];
      PatternElement e;
      if (name == "TERM" && parts.size() == 1) {
        e.kind = PatternElement::Kind::kTerm;
      } else if (name == "ACR" && parts.size() == 1) {
        e.kind = PatternElement::Kind::kAcronym;
      } else if (name == "BOS" && parts.size() == 1) {
        e.kind = PatternElement::Kind::kSentenceStart;
        e.min = e.max = 0;
      } else if (name == "ART" && parts.size() <= 2) {
        e.kind = PatternElement::Kind::kArticle;
        if (parts.size() == 2) std::tie(e.min, e.max) = parse_bounds(parts[1], piece);
      } else if (name == "W" && parts.size() <= 2) {
        e.kind = PatternElement::Kind::kWildcard;
        if (parts.size() == 2) std::tie(e.min, e.max) = parse_bounds(parts[1], piece);
      } else if (name == "POS" && (parts.size() == 2 || parts.size() == 3)) {
        e.kind = PatternElement::Kind::kPos;
        for (const std::string &tag : split_on(parts[1], '|')) {
          Upos u = upos_from_string(tag);
          if (u == Upos::kX && tag != "X") {
            throw DataError("unknown UPOS tag '" + tag + "' in '" + piece + "'");
          }
          e.tags.push_back(u);
        }
        if (parts.size() == 3) std::tie(e.min, e.max) = parse_bounds(parts[2], piece);
      } else {
        throw DataError("unknown pattern element '" + piece + "'");
      }
      spec.elements.push_back(std::move(e));
      continue;
    }

    std::string norm = strip_final_period(normalize_text(piece));
    std::vector<std::string> words = split_ws(norm);
    if (words.empty()) {
      throw DataError("literal '" + piece + "' has no word characters");
    }
    if (!spec.elements.empty() &&
        spec.elements.back().kind == PatternElement::Kind::kLiteral) {
      auto &prev = spec.elements.back().words;
      prev.insert(prev.end(), words.begin(), words.end());
    } else {
      PatternElement e;
      e.kind = PatternElement::Kind::kLiteral;
      e.words = std::move(words);
      spec.elements.push_back(std::move(e));
    }
  }
  if (spec.elements.empty()) throw DataError("empty pattern");
  return spec;
}

std::string PatternSpec::str() const {
  std::string out;
  auto bounds = [](const PatternElement &e) {
    return std::to_string(e.min) + "," + std::to_string(e.max);
  };
  for (const PatternElement &e : elements) {
    if (!out.empty()) out.push_back(' ');
    switch (e.kind) {
      case PatternElement::Kind::kLiteral:
        for (std::size_t i = 0; i < e.words.size(); ++i) {
          if (i > 0) out.push_back(' ');
          out += e.words[i];
        }
        break;
      case PatternElement::Kind::kTerm:
        out += "<TERM>";
        break;
      case PatternElement::Kind::kAcronym:
        out += "<ACR>";
        break;
      case PatternElement::Kind::kSentenceStart:
        out += "<BOS>";
        break;
      case PatternElement::Kind::kArticle:
        out += (e.min == 1 && e.max == 1) ? "<ART>" : "<ART:" + bounds(e) + ">";
        break;
      case PatternElement::Kind::kWildcard:
        out += "<W:" + bounds(e) + ">";
        break;
      case PatternElement::Kind::kPos: {
        out += "<POS:";
        for (std::size_t i = 0; i < e.tags.size(); ++i) {
          if (i > 0) out.push_back('|');
          out += upos_name(e.tags[i]);
        }
        out += ":" + bounds(e) + ">";
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

void RuleCatalog::add(Rule rule) {
  if (!class_belongs_to(rule.cls, rule.family)) {
    throw DataError("rule '" + rule.id + "': class " +
                    std::string(rule_class_name(rule.cls)) + " is not in family " +
                    std::string(rule_family_name(rule.family)));
  }
  if (find(rule.id) != nullptr) throw DataError("duplicate rule id '" + rule.id + "'");
  rules_.push_back(std::move(rule));
}

const Rule *RuleCatalog::find(std::string_view id) const {
  for (const Rule &r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

bool RuleCatalog::set_enabled(std::string_view id, bool enabled) {
  for (Rule &r : rules_) {
    if (r.id == id) {
      r.enabled = enabled;
      return true;
    }
  }
  return false;
}

std::vector<const Rule *> RuleCatalog::enabled_in(RuleClass cls) const {
  std::vector<const Rule *> out;
  for (const Rule &r : rules_) {
    if (r.enabled && r.cls == cls) out.push_back(&r);
  }
  return out;
}

bool RuleCatalog::has_enabled(RuleClass cls) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [cls](const Rule &r) { return r.enabled && r.cls == cls; });
}

RuleCatalog read_rule_catalog(std::istream &in) {
  RuleCatalog catalog;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<std::string> fields = split_on(line, '\t');
    if (fields.size() < 5) {
      // whitespace-separated fallback; the pattern is the remainder
      std::vector<std::string> words = split_ws(line);
      if (words.size() < 5) {
        throw ParseError("rule records need id, kind, family, class and pattern", line_no);
      }
      std::string pattern;
      for (std::size_t i = 4; i < words.size(); ++i) {
        if (!pattern.empty()) pattern.push_back(' ');
        pattern += words[i];
      }
      fields = {words[0], words[1], words[2], words[3], pattern};
    } else if (fields.size() > 5) {
      throw ParseError("too many fields in rule record", line_no);
    }
    if (fields[0] == "id") continue;  // header

    Rule rule;
    rule.id = fields[0];
    const std::string kind = lowercase(fields[1]);
    const std::string family = lowercase(fields[2]);
    const std::string cls = lowercase(fields[3]);
    auto fail = [&](const std::string &what) {
      throw ParseError("rule '" + rule.id + "': " + what, line_no);
    };
    if (kind == "top-down" || kind == "topdown") {
      rule.kind = RuleKind::kTopDown;
    } else if (kind == "bottom-up" || kind == "bottomup") {
      rule.kind = RuleKind::kBottomUp;
    } else {
      fail("unknown kind '" + fields[1] + "'");
    }
    if (family == "definition") {
      rule.family = RuleFamily::kDefinition;
    } else if (family == "hyponym") {
      rule.family = RuleFamily::kHyponym;
    } else {
      fail("unknown family '" + fields[2] + "'");
    }
    auto it = std::find(kClassNames.begin(), kClassNames.end(), cls);
    if (it == kClassNames.end()) fail("unknown class '" + fields[3] + "'");
    rule.cls = static_cast<RuleClass>(it - kClassNames.begin());
    if (!class_belongs_to(rule.cls, rule.family)) {
      fail("class " + cls + " is not in family " + fields[2]);
    }
    try {
      rule.pattern = PatternSpec::parse(fields[4]);
    } catch (const DataError &e) {
      fail(e.what());
    }
    if (catalog.find(rule.id) != nullptr) fail("duplicate rule id");
    catalog.add(std::move(rule));
  }
  if (catalog.empty()) catalog.add_warning("rule catalog is empty");
  return catalog;
}

RuleCatalog load_rule_catalog(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open rule catalog: " + path.string());
  return read_rule_catalog(in);
}

// ---------------------------------------------------------------------------
// Term and content view

TermSpec TermSpec::make(std::string_view term, bool acronym_alone) {
  TermSpec spec;
  spec.words = split_ws(strip_final_period(normalize_text(term)));
  if (spec.words.size() >= 2 && spec.words.size() <= 6) {
    std::string initials;
    for (const std::string &w : spec.words) {
      char c = w[0];
      if (!(c >= 'a' && c <= 'z')) {
        initials.clear();
        break;
      }
      initials.push_back(c);
    }
    spec.acronym = initials;
  }
  spec.acronym_alone = acronym_alone && !spec.acronym.empty();
  return spec;
}

std::string TermSpec::str() const {
  std::string out;
  for (const std::string &w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

ContentView ContentView::of(const Sentence &sentence) {
  return of(sentence, Span{0, static_cast<int>(sentence.tokens.size())});
}

ContentView ContentView::of(const Sentence &sentence, Span span) {
  ContentView view;
  for (int i = span.begin; i < span.end; ++i) {
    const Token &t = sentence.tokens[i];
    if (t.upos == Upos::kPunct) continue;
    view.tokens.push_back(&t);
    view.positions.push_back(i);
  }
  return view;
}

// ---------------------------------------------------------------------------
// Matcher

namespace {

bool word_matches(const Token &t, std::string_view w) {
  return t.surface == w || t.lemma == w;
}

}  // namespace

Matcher::Matcher(Rule rule) : rule_(std::move(rule)) {}

Matcher compile_rule(const Rule &rule) { return Matcher(rule); }

void Matcher::candidate_lengths(std::size_t element, const ContentView &view,
                                const TermSpec &term, int pos,
                                std::vector<int> &out) const {
  out.clear();
  const PatternElement &e = rule_.pattern.elements[element];
  const int n = view.size();
  const int left = n - pos;
  switch (e.kind) {
    case PatternElement::Kind::kSentenceStart:
      if (pos == 0) out.push_back(0);
      return;
    case PatternElement::Kind::kLiteral: {
      const int len = static_cast<int>(e.words.size());
      if (len > left) return;
      for (int i = 0; i < len; ++i) {
        if (!word_matches(*view.tokens[pos + i], e.words[i])) return;
      }
      out.push_back(len);
      return;
    }
    case PatternElement::Kind::kAcronym:
      if (!term.acronym.empty() && left >= 1 && view.tokens[pos]->surface == term.acronym) {
        out.push_back(1);
      }
      return;
    case PatternElement::Kind::kTerm: {
      const int len = static_cast<int>(term.words.size());
      bool full = len > 0 && len <= left;
      for (int i = 0; full && i < len; ++i) {
        full = view.tokens[pos + i]->surface == term.words[i];
      }
      if (full) {
        if (!term.acronym.empty() && len < left &&
            view.tokens[pos + len]->surface == term.acronym) {
          out.push_back(len + 1);
        }
        out.push_back(len);
      }
      if (term.acronym_alone && left >= 1 && view.tokens[pos]->surface == term.acronym &&
          (out.empty() || out.back() != 1)) {
        out.push_back(1);
      }
      return;
    }
    case PatternElement::Kind::kPos:
    case PatternElement::Kind::kArticle: {
      int run = 0;
      while (run < e.max && run < left) {
        const Token &t = *view.tokens[pos + run];
        bool ok = e.kind == PatternElement::Kind::kArticle
                      ? is_article(t.surface)
                      : std::find(e.tags.begin(), e.tags.end(), t.upos) != e.tags.end();
        if (!ok) break;
        ++run;
      }
      for (int k = run; k >= e.min; --k) out.push_back(k);
      return;
    }
    case PatternElement::Kind::kWildcard:
      for (int k = std::min(e.max, left); k >= e.min; --k) out.push_back(k);
      return;
  }
}

std::vector<char> Matcher::reachable(const ContentView &view, const TermSpec &term,
                                     int start) const {
  const int n = view.size();
  std::vector<char> current(n + 1, 0), next(n + 1, 0);
  current[start] = 1;
  std::vector<int> lengths;
  for (std::size_t i = 0; i < rule_.pattern.elements.size(); ++i) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (int p = start; p <= n; ++p) {
      if (!current[p]) continue;
      candidate_lengths(i, view, term, p, lengths);
      for (int k : lengths) {
        next[p + k] = 1;
        any = true;
      }
    }
    current.swap(next);
    if (!any) break;
  }
  return current;
}

RawMatch Matcher::reconstruct(const ContentView &view, const TermSpec &term, int start,
                              int end) const {
  const std::size_t m = rule_.pattern.elements.size();
  const int width = end - start + 1;
  // feasible[i][p - start]: elements i.. can cover exactly [p, end)
  std::vector<std::vector<char>> feasible(m + 1, std::vector<char>(width, 0));
  feasible[m][end - start] = 1;
  std::vector<int> lengths;
  for (std::size_t i = m; i-- > 0;) {
    for (int p = start; p <= end; ++p) {
      candidate_lengths(i, view, term, p, lengths);
      for (int k : lengths) {
        if (p + k <= end && feasible[i + 1][p + k - start]) {
          feasible[i][p - start] = 1;
          break;
        }
      }
    }
  }
  RawMatch raw;
  raw.begin = start;
  raw.end = end;
  int p = start;
  for (std::size_t i = 0; i < m; ++i) {
    candidate_lengths(i, view, term, p, lengths);
    // lengths are in descending order, so the first feasible one is greedy
    for (int k : lengths) {
      if (p + k <= end && feasible[i + 1][p + k - start]) {
        raw.lengths.push_back(k);
        p += k;
        break;
      }
    }
  }
  return raw;
}

std::optional<RawMatch> Matcher::match_at(const ContentView &view, const TermSpec &term,
                                          int start) const {
  const int n = view.size();
  if (start < 0 || start >= n) return std::nullopt;
  std::vector<char> ends = reachable(view, term, start);
  for (int e = n; e > start; --e) {
    if (ends[e]) return reconstruct(view, term, start, e);
  }
  return std::nullopt;
}

bool Matcher::matches_exactly(const ContentView &view, const TermSpec &term, int begin,
                              int end) const {
  if (begin < 0 || end > view.size() || begin > end) return false;
  if (begin == view.size()) return false;
  return reachable(view, term, begin)[end] != 0;
}

std::vector<RawMatch> Matcher::scan(const ContentView &view, const TermSpec &term) const {
  std::vector<RawMatch> matches;
  int s = 0;
  while (s < view.size()) {
    if (auto m = match_at(view, term, s)) {
      s = m->end;
      matches.push_back(std::move(*m));
    } else {
      ++s;
    }
  }
  return matches;
}

Match Matcher::to_match(const Sentence &sentence, const ContentView &view,
                        const RawMatch &raw) const {
  const auto &elements = rule_.pattern.elements;
  auto span_of = [&](int a, int b) -> std::optional<Span> {
    if (a >= b) return std::nullopt;
    return Span{view.positions[a], view.positions[b - 1] + 1};
  };

  Match match;
  match.rule_id = rule_.id;
  match.sentence = &sentence;
  match.whole = *span_of(raw.begin, raw.end);

  std::vector<int> offset(elements.size() + 1, raw.begin);
  for (std::size_t i = 0; i < elements.size(); ++i) offset[i + 1] = offset[i] + raw.lengths[i];

  std::size_t term_index = elements.size();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].kind == PatternElement::Kind::kTerm) {
      term_index = i;
      break;
    }
  }
  if (term_index < elements.size()) {
    match.definiendum = span_of(offset[term_index], offset[term_index + 1]);
  }

  // Remainder of the sentence without trailing punctuation.
  int tail_end = static_cast<int>(sentence.tokens.size());
  while (tail_end > match.whole.end && sentence.tokens[tail_end - 1].upos == Upos::kPunct) {
    --tail_end;
  }

  if (rule_.family == RuleFamily::kDefinition) {
    if (term_index + 1 < elements.size()) {
      match.definitor = span_of(offset[term_index + 1], raw.end);
    }
    if (tail_end > match.whole.end) match.definiens = Span{match.whole.end, tail_end};
    return match;
  }

  // Hyponym family: trailing literals form the trigger ("such as").
  std::size_t trigger = elements.size();
  while (trigger > 0 && elements[trigger - 1].kind == PatternElement::Kind::kLiteral) {
    --trigger;
  }
  int slot_begin = term_index < elements.size() ? offset[term_index + 1] : raw.begin;
  for (int c = offset[trigger] - 1; c >= slot_begin; --c) {
    if (is_nominal(view.tokens[c]->upos)) {
      match.hypernym = Span{view.positions[c], view.positions[c] + 1};
      break;
    }
  }
  int list_end = tail_end;
  for (int t = match.whole.end; t < tail_end; ++t) {
    if (sentence.tokens[t].surface == "etc") {
      list_end = t + 1;
      break;
    }
  }
  if (list_end > match.whole.end) match.hyponym_list = Span{match.whole.end, list_end};
  return match;
}

std::vector<Match> match_sentence(const Matcher &matcher, const Sentence &sentence,
                                  const TermSpec &term) {
  ContentView view = ContentView::of(sentence);
  std::vector<Match> out;
  for (const RawMatch &raw : matcher.scan(view, term)) {
    out.push_back(matcher.to_match(sentence, view, raw));
  }
  return out;
}

std::vector<Match> match_sentence(const Matcher &matcher, const Sentence &sentence,
                                  std::string_view term) {
  return match_sentence(matcher, sentence, TermSpec::make(term));
}

}  // namespace defminer
