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

#include "defminer/corpus_io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "defminer/csv.h"
#include "defminer/errors.h"
#include "json.hpp"

namespace defminer {
namespace {

constexpr std::array<std::string_view, 17> kUposNames = {
    "ADJ",   "ADP",  "ADV",  "AUX", "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART",  "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Letters, digits and any non-ASCII byte count as word characters.
bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

bool is_intra_word_hyphen(std::string_view s, std::size_t i) {
  return s[i] == '-' && i > 0 && i + 1 < s.size() && is_word_char(s[i - 1]) &&
         is_word_char(s[i + 1]);
}

bool is_ascii_punct_token(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || is_word_char(c) || is_space(c)) return false;
  }
  return true;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

const std::unordered_set<std::string_view> kAbbreviations = {"eg", "ie", "etc",
                                                             "al", "vs"};

}  // namespace

Upos upos_from_string(std::string_view tag) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i) {
    if (kUposNames[i] == tag) return static_cast<Upos>(i);
  }
  return Upos::kX;
}

std::string_view upos_name(Upos tag) {
  return kUposNames[static_cast<std::size_t>(tag)];
}

// ---------------------------------------------------------------------------
// Corpus files

CorpusFormat corpus_format_from_string(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "csv") return CorpusFormat::kCsv;
  throw UsageError("unknown corpus format '" + std::string(name) +
                   "' (expected jsonl or csv)");
}

CorpusFormat corpus_format_from_path(const std::filesystem::path &path) {
  return path.extension() == ".csv" ? CorpusFormat::kCsv : CorpusFormat::kJsonl;
}

namespace {

void add_document(Corpus &corpus, std::unordered_set<std::string> &seen,
                  Document doc) {
  if (!seen.insert(doc.doc_id).second) {
    throw DataError("duplicate doc_id: " + doc.doc_id);
  }
  corpus.push_back(std::move(doc));
}

Document document_from_json(const nlohmann::json &record, std::size_t line) {
  if (!record.is_object()) throw ParseError("record is not a JSON object", line);
  auto id = record.find("doc_id");
  auto abstract = record.find("abstract");
  if (id == record.end() || !(id->is_string() || id->is_number_integer())) {
    throw ParseError("missing or non-string field 'doc_id'", line);
  }
  if (abstract == record.end() || !abstract->is_string()) {
    throw ParseError("missing or non-string field 'abstract'", line);
  }
  Document doc;
  doc.doc_id = id->is_string() ? id->get<std::string>() : id->dump();
  doc.abstract_text = abstract->get<std::string>();
  if (doc.doc_id.empty()) throw ParseError("empty doc_id", line);

  if (auto year = record.find("year"); year != record.end() && !year->is_null()) {
    if (!year->is_number_integer()) throw ParseError("'year' must be an integer", line);
    doc.year = year->get<int>();
  }
  if (auto areas = record.find("subject_areas");
      areas != record.end() && !areas->is_null()) {
    if (!areas->is_object()) {
      throw ParseError("'subject_areas' must map area names to counts", line);
    }
    for (const auto &[name, count] : areas->items()) {
      if (!count.is_number() || count.get<double>() < 0) {
        throw ParseError("subject area '" + name + "' needs a count >= 0", line);
      }
      doc.subject_areas.emplace_back(name, count.get<double>());
    }
  }
  return doc;
}

Corpus read_jsonl(std::istream &in) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    add_document(corpus, seen, document_from_json(record, line_no));
  }
  return corpus;
}

std::vector<std::pair<std::string, double>> parse_area_list(std::string_view text,
                                                            std::size_t line) {
  std::vector<std::pair<std::string, double>> areas;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (!item.empty()) {
      std::size_t eq = item.rfind('=');
      if (eq == std::string_view::npos) {
        throw ParseError("subject area '" + std::string(item) + "' lacks '=count'", line);
      }
      std::string name(item.substr(0, eq));
      std::string count_text(item.substr(eq + 1));
      double count = 0;
      try {
        std::size_t used = 0;
        count = std::stod(count_text, &used);
        if (used != count_text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception &) {
        throw ParseError("bad count for subject area '" + name + "'", line);
      }
      if (count < 0) throw ParseError("negative count for '" + name + "'", line);
      areas.emplace_back(std::move(name), count);
    }
    start = end + 1;
  }
  return areas;
}

Corpus read_csv_corpus(std::istream &in) {
  std::vector<CsvRecord> records = read_csv(in);
  Corpus corpus;
  if (records.empty()) return corpus;
  auto &header = records.front().fields;
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  auto column = [&](std::string_view name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : int(it - header.begin());
  };
  int id_col = column("doc_id");
  int abstract_col = column("abstract");
  int year_col = column("year");
  int areas_col = column("subject_areas");
  if (id_col < 0 || abstract_col < 0) {
    throw ParseError("CSV header needs 'doc_id' and 'abstract' columns", 1);
  }
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord &rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(rec.fields.size()),
                       rec.line);
    }
    Document doc;
    doc.doc_id = rec.fields[id_col];
    doc.abstract_text = rec.fields[abstract_col];
    if (doc.doc_id.empty()) throw ParseError("empty doc_id", rec.line);
    if (year_col >= 0 && !rec.fields[year_col].empty()) {
      const std::string &y = rec.fields[year_col];
      int year = 0;
      auto [ptr, ec] = std::from_chars(y.data(), y.data() + y.size(), year);
      if (ec != std::errc() || ptr != y.data() + y.size()) {
        throw ParseError("'year' must be an integer", rec.line);
      }
      doc.year = year;
    }
    if (areas_col >= 0) doc.subject_areas = parse_area_list(rec.fields[areas_col], rec.line);
    add_document(corpus, seen, std::move(doc));
  }
  return corpus;
}

}  // namespace

Corpus read_corpus(std::istream &in, CorpusFormat format) {
  return format == CorpusFormat::kCsv ? read_csv_corpus(in) : read_jsonl(in);
}

Corpus load_corpus(const std::filesystem::path &path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  return read_corpus(in, format);
}

// ---------------------------------------------------------------------------
// Normalization, segmentation, tokenization

std::string normalize_text(std::string_view raw) {
  std::size_t last = raw.find_last_not_of(" \t\n\r\f\v");
  bool final_period = last != std::string_view::npos && raw[last] == '.';
  std::size_t limit = final_period ? last : raw.size();

  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < limit; ++i) {
    char c = raw[i];
    if (is_word_char(c) || is_intra_word_hyphen(raw, i)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(lower(c));
    } else if (c == '.' || c == '\'') {
      // deleted without leaving a gap
    } else {
      pending_space = true;
    }
  }
  if (final_period) out.push_back('.');
  return out;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    if (end > begin) sentences.emplace_back(text.substr(begin, end - begin));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    if (c == '.') {
      // Word before the period, without leading brackets or quotes.
      std::size_t w = i;
      while (w > start && !is_space(text[w - 1])) --w;
      std::string word;
      for (std::size_t k = w; k < i; ++k) {
        if (is_word_char(text[k]) || text[k] == '.') word.push_back(lower(text[k]));
      }
      if (word == "e.g" || word == "i.e" || word == "etc") {
        ++i;
        continue;
      }
    }
    std::size_t j = i;
    while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    bool at_end = k == text.size();
    bool next_capital = k > j && k < text.size() && text[k] >= 'A' && text[k] <= 'Z';
    if (at_end || next_capital) {
      emit(start, j);
      start = k;
    }
    i = j;
  }
  emit(start, text.size());
  return sentences;
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  // Index of the next character that normalization does not delete.
  auto next_kept = [&](std::size_t i) {
    while (i < raw.size() && (raw[i] == '.' || raw[i] == '\'')) ++i;
    return i;
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (is_word_char(c) || is_intra_word_hyphen(raw, i)) {
      current.push_back(lower(c));
    } else if (c == '\'') {
      continue;
    } else if (c == '.') {
      std::size_t n = next_kept(i + 1);
      if (n < raw.size() && is_word_char(raw[n]) && !current.empty()) continue;
      if (kAbbreviations.count(current)) {
        flush();
        continue;
      }
      flush();
      if (n < raw.size() && is_word_char(raw[n])) continue;  // ".5" style
      tokens.emplace_back(".");
    } else if (is_space(c)) {
      flush();
    } else {
      flush();
      tokens.emplace_back(1, c);
    }
  }
  flush();
  return tokens;
}

// ---------------------------------------------------------------------------
// CoNLL-U

std::vector<Sentence> parse_conllu(std::string_view text) {
  std::vector<Sentence> sentences;
  Sentence current;
  bool have_text = false;
  std::string doc_id;
  int sent_in_doc = 0;

  auto finish = [&] {
    if (current.tokens.empty()) {
      current = Sentence{};
      have_text = false;
      return;
    }
    if (!have_text) {
      std::string joined;
      for (const Token &t : current.tokens) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t.surface;
      }
      current.raw_text = std::move(joined);
    }
    current.doc_id = doc_id;
    current.sent_index = sent_in_doc++;
    sentences.push_back(std::move(current));
    current = Sentence{};
    have_text = false;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);

    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      finish();
      if (nl == text.size()) break;
      continue;
    }
    if (line.front() == '#') {
      std::string_view body = line.substr(1);
      std::size_t eq = body.find('=');
      if (eq != std::string_view::npos) {
        auto trim = [](std::string_view s) {
          std::size_t b = s.find_first_not_of(" \t");
          std::size_t e = s.find_last_not_of(" \t");
          return b == std::string_view::npos ? std::string_view{} : s.substr(b, e - b + 1);
        };
        std::string_view key = trim(body.substr(0, eq));
        std::string_view value = trim(body.substr(eq + 1));
        if (key == "newdoc id" || key == "doc_id") {
          if (doc_id != value) sent_in_doc = 0;
          doc_id = std::string(value);
        } else if (key == "text") {
          current.raw_text = std::string(value);
          have_text = true;
        }
      }
      if (nl == text.size()) break;
      continue;
    }

    std::vector<std::string_view> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, got " +
                           std::to_string(cols.size()),
                       line_no);
    }
    std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      if (nl == text.size()) break;
      continue;  // multiword range or empty node
    }
    int index = 0;
    auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), index);
    if (ec != std::errc() || ptr != id.data() + id.size() || index < 1) {
      throw ParseError("non-integer token ID '" + std::string(id) + "'", line_no);
    }
    if (index != static_cast<int>(current.tokens.size()) + 1) {
      throw ParseError("token ID " + std::to_string(index) + " out of sequence", line_no);
    }
    Token token;
    token.surface = std::string(cols[1]);
    token.lemma = cols[2] == "_" || cols[2].empty() ? token.surface : std::string(cols[2]);
    token.upos = upos_from_string(cols[3]);
    token.index = index;
    current.tokens.push_back(std::move(token));
    if (nl == text.size()) break;
  }
  finish();
  return sentences;
}

std::string write_conllu(const std::vector<Sentence> &sentences) {
  std::ostringstream out;
  const std::string *last_doc = nullptr;
  for (const Sentence &s : sentences) {
    if (!s.doc_id.empty() && (last_doc == nullptr || *last_doc != s.doc_id)) {
      out << "# newdoc id = " << s.doc_id << '\n';
    }
    last_doc = &s.doc_id;
    out << "# sent_id = " << (s.doc_id.empty() ? "s" : s.doc_id) << '-'
        << s.sent_index << '\n';
    out << "# text = " << s.raw_text << '\n';
    for (const Token &t : s.tokens) {
      out << t.index << '\t' << t.surface << '\t' << t.lemma << '\t'
          << upos_name(t.upos) << "\t_\t_\t_\t_\t_\t_\n";
    }
    out << '\n';
  }
  return out.str();
}

void normalize_tokens(Sentence &sentence) {
  for (Token &t : sentence.tokens) {
    std::string surface = normalize_text(t.surface);
    std::string lemma = normalize_text(t.lemma);
    if (surface.size() > 1 && surface.back() == '.') surface.pop_back();
    if (lemma.size() > 1 && lemma.back() == '.') lemma.pop_back();
    if (surface.empty() || surface == ".") {
      // pure punctuation: keep the form, force the tag
      t.upos = Upos::kPunct;
      continue;
    }
    if (surface.find(' ') != std::string::npos) {
      surface.erase(std::remove(surface.begin(), surface.end(), ' '), surface.end());
    }
    if (lemma.find(' ') != std::string::npos) {
      lemma.erase(std::remove(lemma.begin(), lemma.end(), ' '), lemma.end());
    }
    t.surface = std::move(surface);
    t.lemma = lemma.empty() || lemma == "." ? t.surface : std::move(lemma);
  }
}

// ---------------------------------------------------------------------------
// Lexicon and heuristic tagger

Lexicon Lexicon::read(std::istream &in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = split_ws(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("lexicon entries are 'word<TAB>UPOS[<TAB>lemma]'", line_no);
    }
    Upos tag = upos_from_string(fields[1]);
    if (tag == Upos::kX && fields[1] != "X") {
      throw ParseError("unknown UPOS tag '" + fields[1] + "'", line_no);
    }
    lex.add(fields[0], tag, fields.size() == 3 ? fields[2] : std::string{});
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon: " + path.string());
  return read(in);
}

void Lexicon::add(std::string word, Upos upos, std::string lemma) {
  entries_[std::move(word)] = Entry{upos, std::move(lemma)};
}

const Lexicon::Entry *Lexicon::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string singular_form(std::string_view noun) {
  static const std::unordered_set<std::string_view> kInvariant = {
      "analysis", "basis",  "series", "species", "news",     "physics",
      "lens",     "status", "corpus", "bias",    "mathematics", "thesis",
      "hypothesis", "diagnosis", "synthesis", "economics"};
  std::string w(noun);
  if (w.size() <= 3 || kInvariant.count(w)) return w;
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
  for (std::string_view es : {"shes", "ches", "xes", "zes"}) {
    if (ends_with(w, es)) return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return w;
  if (w.back() == 's') w.pop_back();
  return w;
}

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Undo consonant doubling ("runn" -> "run") and restore a dropped final
// "e" for common stem endings ("involv" -> "involve").
std::string repair_stem(std::string stem) {
  std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (stem == "us") return "use";
  for (std::string_view tail : {"at", "iz", "yz", "bl", "uc", "rc", "v", "lud", "uir"}) {
    if (ends_with(stem, tail)) return stem + "e";
  }
  return stem;
}

}  // namespace

std::string verb_lemma(std::string_view verb) {
  std::string w(verb);
  if (ends_with(w, "ing") && w.size() >= 6) return repair_stem(w.substr(0, w.size() - 3));
  if (ends_with(w, "ied") && w.size() >= 5) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "ed") && w.size() >= 5) return repair_stem(w.substr(0, w.size() - 2));
  if (ends_with(w, "ies") && w.size() >= 5) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view es : {"sses", "shes", "ches", "xes", "zes"}) {
    if (ends_with(w, es)) return w.substr(0, w.size() - 2);
  }
  if (w.size() >= 4 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us")) {
    w.pop_back();
  }
  return w;
}

namespace {

std::optional<Upos> suffix_tag(std::string_view w) {
  struct Rule {
    std::string_view suffix;
    Upos tag;
  };
  static constexpr Rule kRules[] = {
      {"ly", Upos::kAdv},    {"ing", Upos::kVerb},  {"ed", Upos::kVerb},
      {"tion", Upos::kNoun}, {"ment", Upos::kNoun}, {"ness", Upos::kNoun},
      {"ity", Upos::kNoun},  {"ous", Upos::kAdj},   {"ive", Upos::kAdj},
      {"al", Upos::kAdj},    {"ic", Upos::kAdj},
  };
  for (const Rule &r : kRules) {
    // at least three characters of stem
    if (w.size() >= r.suffix.size() + 3 && ends_with(w, r.suffix)) return r.tag;
  }
  return std::nullopt;
}

std::optional<Upos> closed_class_tag(std::string_view w) {
  static const std::unordered_map<std::string_view, Upos> kClosed = [] {
    std::unordered_map<std::string_view, Upos> m;
    for (auto d : {"a", "an", "the", "these", "those", "each", "every", "some",
                   "any", "all", "no", "another", "both", "either", "neither"})
      m[d] = Upos::kDet;
    for (auto p : {"of", "in", "on", "at", "by", "for", "with", "from", "to",
                   "into", "onto", "over", "under", "about", "between", "among",
                   "through", "during", "without", "within", "across", "against",
                   "toward", "towards", "via", "upon", "as", "per", "than",
                   "after", "before", "behind", "beyond", "despite", "throughout",
                   "like", "around", "along", "amongst", "inside", "outside"})
      m[p] = Upos::kAdp;
    for (auto a : {"is", "are", "be", "was", "were", "been", "being", "am",
                   "can", "could", "will", "would", "shall", "should", "may",
                   "might", "must", "has", "have", "had", "do", "does", "did"})
      m[a] = Upos::kAux;
    for (auto c : {"and", "or", "but", "nor", "yet"}) m[c] = Upos::kCconj;
    for (auto s : {"because", "although", "though", "while", "whereas", "if",
                   "whether", "unless", "since", "so", "whilst"})
      m[s] = Upos::kSconj;
    for (auto p : {"i", "you", "he", "she", "it", "we", "they", "me", "him",
                   "her", "us", "them", "my", "your", "his", "its", "our",
                   "their", "which", "who", "whom", "whose", "what", "that",
                   "this", "itself", "themselves", "ourselves", "there"})
      m[p] = Upos::kPron;
    m["not"] = Upos::kPart;
    for (auto n : {"one", "two", "three", "four", "five", "six", "seven",
                   "eight", "nine", "ten", "hundred", "thousand", "million"})
      m[n] = Upos::kNum;
    return m;
  }();
  if (auto it = kClosed.find(w); it != kClosed.end()) return it->second;
  if (is_ascii_punct_token(w)) return Upos::kPunct;
  if (!w.empty() && w[0] >= '0' && w[0] <= '9') return Upos::kNum;
  return std::nullopt;
}

std::string rule_lemma(std::string_view w, Upos tag) {
  switch (tag) {
    case Upos::kNoun:
      return singular_form(w);
    case Upos::kVerb:
      return verb_lemma(w);
    case Upos::kAux:
      if (w == "is" || w == "are" || w == "was" || w == "were" || w == "been" ||
          w == "being" || w == "am" || w == "be")
        return "be";
      if (w == "has" || w == "had") return "have";
      if (w == "does" || w == "did") return "do";
      return std::string(w);
    default:
      return std::string(w);
  }
}

}  // namespace

Sentence tag_heuristic(std::string_view sentence_text, const Lexicon &lexicon) {
  Sentence sentence;
  sentence.raw_text = std::string(sentence_text);
  int index = 0;
  for (std::string &word : split_ws(sentence_text)) {
    Token token;
    token.index = ++index;
    if (const Lexicon::Entry *entry = lexicon.find(word)) {
      token.upos = entry->upos;
      token.lemma = entry->lemma.empty() ? rule_lemma(word, entry->upos) : entry->lemma;
    } else {
      Upos tag = Upos::kNoun;
      if (auto s = suffix_tag(word)) {
        tag = *s;
      } else if (auto c = closed_class_tag(word)) {
        tag = *c;
      }
      token.upos = tag;
      token.lemma = rule_lemma(word, tag);
    }
    if (token.lemma.empty()) token.lemma = word;
    token.surface = std::move(word);
    sentence.tokens.push_back(std::move(token));
  }
  return sentence;
}

Sentence analyze_sentence(std::string_view raw, const Lexicon &lexicon,
                          std::string doc_id, int sent_index) {
  std::string joined;
  for (const std::string &t : tokenize(raw)) {
    if (!joined.empty()) joined.push_back(' ');
    joined += t;
  }
  Sentence s = tag_heuristic(joined, lexicon);
  s.raw_text = std::string(raw);
  s.doc_id = std::move(doc_id);
  s.sent_index = sent_index;
  return s;
}

AnnotatedCorpus annotate_corpus(Corpus corpus, const Lexicon &lexicon, Exec exec) {
  std::vector<std::vector<Sentence>> per_doc(corpus.size());
  const long n = static_cast<long>(corpus.size());
  auto annotate = [&](long d) {
    const Document &doc = corpus[d];
    int k = 0;
    for (const std::string &raw : segment_sentences(doc.abstract_text)) {
      Sentence s = analyze_sentence(raw, lexicon, doc.doc_id, k);
      if (s.tokens.empty()) continue;
      ++k;
      per_doc[d].push_back(std::move(s));
    }
  };
  if (exec == Exec::kSerial) {
    for (long d = 0; d < n; ++d) annotate(d);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long d = 0; d < n; ++d) annotate(d);
  }
  AnnotatedCorpus out;
  for (auto &sentences : per_doc) {
    for (Sentence &s : sentences) out.sentences.push_back(std::move(s));
  }
  out.documents = std::move(corpus);
  out.heuristic_tags = true;
  return out;
}

AnnotatedCorpus annotate_corpus(Corpus corpus, std::vector<Sentence> conllu) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < corpus.size(); ++i) position[corpus[i].doc_id] = i;
  std::vector<std::vector<Sentence>> per_doc(corpus.size());
  for (Sentence &s : conllu) {
    auto it = position.find(s.doc_id);
    if (it == position.end()) {
      throw DataError("CoNLL-U sentence " + std::to_string(s.sent_index) +
                      " names unknown doc_id '" + s.doc_id +
                      "' (use '# newdoc id = ...')");
    }
    normalize_tokens(s);
    per_doc[it->second].push_back(std::move(s));
  }
  AnnotatedCorpus out;
  for (auto &sentences : per_doc) {
    for (Sentence &s : sentences) out.sentences.push_back(std::move(s));
  }
  out.documents = std::move(corpus);
  out.heuristic_tags = false;
  return out;
}

}  // namespace defminer
