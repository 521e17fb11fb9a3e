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


#include "defminer/evaluation.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "defminer/csv.h"
#include "defminer/errors.h"

namespace defminer {
namespace {

bool is_retrieval_class(RuleClass cls) {
  return cls == RuleClass::kDefinitor || cls == RuleClass::kCompleteDefinition ||
         cls == RuleClass::kHyponymCore;
}

std::map<std::string, std::size_t> header_index(const CsvRecord &header,
                                                const std::vector<std::string> &required,
                                                std::string_view what) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.fields.size(); ++i) index[header.fields[i]] = i;
  for (const std::string &name : required) {
    if (!index.count(name)) {
      throw ParseError(std::string(what) + " header lacks column '" + name + "'", header.line);
    }
  }
  return index;
}

int parse_count(const std::string &text, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size() && v >= 0) return v;
  } catch (const std::logic_error &) {
  }
  throw ParseError("expected a non-negative integer, got '" + text + "'", line);
}

FreqTable table_of(const std::map<std::string, int> &counts, int total) {
  FreqTable t;
  t.total = total;
  for (const auto &[k, c] : counts) t.entries.push_back({k, c, total ? double(c) / total : 0.0});
  std::stable_sort(t.entries.begin(), t.entries.end(),
                   [](const FreqEntry &a, const FreqEntry &b) { return a.count > b.count; });
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gold labels

GoldSet GoldSet::read(std::istream &in) {
  std::vector<CsvRecord> rows = read_csv(in);
  GoldSet gold;
  if (rows.empty()) return gold;
  auto col = header_index(rows[0], {"doc_id", "fingerprint", "relevant"}, "gold file");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRecord &r = rows[i];
    if (r.fields.size() < rows[0].fields.size()) {
      throw ParseError("gold record has too few fields", r.line);
    }
    const std::string &rel = r.fields[col["relevant"]];
    if (rel != "0" && rel != "1") {
      throw ParseError("relevant must be 0 or 1, got '" + rel + "'", r.line);
    }
    try {
      gold.add({r.fields[col["doc_id"]], r.fields[col["fingerprint"]], rel == "1"});
    } catch (const DataError &e) {
      throw ParseError(e.what(), r.line);
    }
  }
  return gold;
}

GoldSet GoldSet::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold file: " + path.string());
  return read(in);
}

void GoldSet::add(GoldLabel label) {
  label.fingerprint = normalize_text(label.fingerprint);
  std::string key = label.fingerprint;
  if (!labels_.emplace(key, std::move(label)).second) {
    throw DataError("duplicate gold fingerprint: " + key);
  }
}

const GoldLabel *GoldSet::find(std::string_view fingerprint) const {
  auto it = labels_.find(fingerprint);
  return it == labels_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Precision

std::optional<double> RuleEvaluation::precision() const {
  if (retrieved <= 0) return std::nullopt;
  return static_cast<double>(relevant) / retrieved;
}

int EvaluationSummary::total_retrieved() const {
  int n = 0;
  for (const RuleEvaluation &e : per_observation) n += e.retrieved;
  return n;
}

int EvaluationSummary::total_relevant() const {
  int n = 0;
  for (const RuleEvaluation &e : per_observation) n += e.relevant;
  return n;
}

double weighted_precision(const std::vector<RuleEvaluation> &evals) {
  if (evals.empty()) throw DataError("weighted precision of no observations");
  long retrieved = 0, relevant = 0;
  for (const RuleEvaluation &e : evals) {
    retrieved += e.retrieved;
    relevant += e.relevant;
  }
  if (retrieved == 0) throw DataError("weighted precision undefined: nothing retrieved");
  return static_cast<double>(relevant) / retrieved;
}

double mean_relevant(const std::vector<RuleEvaluation> &evals) {
  if (evals.empty()) return 0.0;
  long relevant = 0;
  for (const RuleEvaluation &e : evals) relevant += e.relevant;
  return static_cast<double>(relevant) / evals.size();
}

EvaluationSummary summarize(std::string rule_set_id, std::vector<RuleEvaluation> evals) {
  for (const RuleEvaluation &e : evals) {
    if (e.relevant < 0 || e.relevant > e.retrieved) {
      throw DataError("observation '" + e.observation + "': relevant exceeds retrieved");
    }
  }
  EvaluationSummary s;
  s.rule_set_id = std::move(rule_set_id);
  s.mean_relevant = mean_relevant(evals);
  s.per_observation = std::move(evals);
  if (s.total_retrieved() > 0) s.weighted_precision = weighted_precision(s.per_observation);
  return s;
}

// ---------------------------------------------------------------------------
// Rule sets

RuleSetSpec parse_rule_set(std::string_view text) {
  RuleSetSpec spec;
  std::string body(text);
  if (auto eq = body.find('='); eq != std::string::npos) {
    spec.id = body.substr(0, eq);
    body = body.substr(eq + 1);
  }
  std::istringstream in(body);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (!id.empty()) spec.rule_ids.insert(id);
  }
  if (spec.rule_ids.empty()) throw UsageError("empty rule set: " + std::string(text));
  if (spec.id.empty()) {
    for (const std::string &r : spec.rule_ids) spec.id += (spec.id.empty() ? "" : "+") + r;
  }
  return spec;
}

RuleCatalog restrict_catalog(const RuleCatalog &catalog, const std::set<std::string> &rule_ids) {
  for (const std::string &id : rule_ids) {
    if (!catalog.find(id)) throw DataError("unknown rule id: " + id);
  }
  RuleCatalog out = catalog;
  for (const Rule &r : catalog.rules()) {
    if (is_retrieval_class(r.cls)) out.set_enabled(r.id, rule_ids.count(r.id) > 0);
  }
  return out;
}

EvaluationSummary evaluate_rule_set(const RuleSetSpec &rule_set,
                                    const std::vector<std::string> &observations,
                                    const AnnotatedCorpus &corpus, const RuleCatalog &catalog,
                                    const Stopwords &stopwords, const GoldSet &gold) {
  RuleCatalog restricted = restrict_catalog(catalog, rule_set.rule_ids);
  std::vector<RuleEvaluation> evals;
  std::vector<std::string> missing;
  for (const std::string &term : observations) {
    Extractor extractor(restricted, term, stopwords);
    RuleEvaluation e;
    e.rule_set_id = rule_set.id;
    e.observation = term;
    std::set<std::pair<std::string, int>> seen;
    for (const RetrievalHit &hit : extractor.retrieve(corpus)) {
      if (!seen.insert({hit.doc_id, hit.sent_index}).second) continue;
      ++e.retrieved;
      const GoldLabel *label = gold.find(hit.fingerprint);
      if (!label) {
        missing.push_back(hit.fingerprint);
      } else if (label->relevant) {
        ++e.relevant;
      }
    }
    evals.push_back(std::move(e));
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string msg = "missing gold labels for " + std::to_string(missing.size()) +
                      " retrieved sentence(s):";
    for (const std::string &m : missing) msg += "\n  " + m;
    throw DataError(msg);
  }
  return summarize(rule_set.id, std::move(evals));
}

std::vector<EvaluationSummary> read_count_table(std::istream &in) {
  std::vector<CsvRecord> rows = read_csv(in);
  if (rows.empty()) throw DataError("count table is empty");
  auto col = header_index(rows[0], {"observation", "rule_set", "retrieved", "relevant"},
                          "count table");
  std::vector<std::string> order;
  std::map<std::string, std::vector<RuleEvaluation>> by_set;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRecord &r = rows[i];
    if (r.fields.size() < rows[0].fields.size()) {
      throw ParseError("count record has too few fields", r.line);
    }
    RuleEvaluation e;
    e.observation = r.fields[col["observation"]];
    e.rule_set_id = r.fields[col["rule_set"]];
    e.retrieved = parse_count(r.fields[col["retrieved"]], r.line);
    e.relevant = parse_count(r.fields[col["relevant"]], r.line);
    if (e.relevant > e.retrieved) throw ParseError("relevant exceeds retrieved", r.line);
    if (!by_set.count(e.rule_set_id)) order.push_back(e.rule_set_id);
    by_set[e.rule_set_id].push_back(std::move(e));
  }
  std::vector<EvaluationSummary> out;
  for (const std::string &id : order) out.push_back(summarize(id, std::move(by_set[id])));
  return out;
}

std::vector<EvaluationSummary> load_count_table(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open count table: " + path.string());
  return read_count_table(in);
}

// ---------------------------------------------------------------------------
// Selection

Selection rank_and_select(const std::vector<Candidate> &candidates, double precision_floor,
                          bool exclusive) {
  Selection sel;
  std::vector<const Candidate *> survivors;
  for (const Candidate &c : candidates) {
    const auto &p = c.summary.weighted_precision;
    if (p && *p >= precision_floor) {
      survivors.push_back(&c);
    } else {
      sel.diagnostics.push_back("'" + c.rule_set.id + "' below precision floor " +
                                format_decimal(precision_floor, 3));
    }
  }
  if (survivors.empty()) {
    sel.diagnostics.push_back("no candidate reaches the precision floor");
    return sel;
  }
  auto most_relevant = [&] {
    const Candidate *best = survivors.front();
    for (const Candidate *c : survivors) {
      int a = c->summary.total_relevant(), b = best->summary.total_relevant();
      if (a > b || (a == b && *c->summary.weighted_precision > *best->summary.weighted_precision)) {
        best = c;
      }
    }
    return best;
  };
  if (exclusive || survivors.size() == 1) {
    sel.selected = most_relevant()->rule_set.id;
    return sel;
  }

  std::set<std::string> all;
  for (const Candidate *c : survivors) all.insert(c->rule_set.rule_ids.begin(), c->rule_set.rule_ids.end());
  for (const Candidate *u : survivors) {
    if (u->rule_set.rule_ids != all) continue;
    bool dominates = std::all_of(survivors.begin(), survivors.end(), [&](const Candidate *c) {
      return u->summary.total_relevant() >= c->summary.total_relevant();
    });
    if (dominates) {
      sel.selected = u->rule_set.id;
      return sel;
    }
    sel.diagnostics.push_back("union '" + u->rule_set.id + "' has fewer relevant results");
  }
  sel.selected = most_relevant()->rule_set.id;
  return sel;
}

std::string evaluation_report_csv(const std::vector<EvaluationSummary> &summaries,
                                  bool decimal_comma) {
  std::vector<std::string> header{"observation"};
  for (const EvaluationSummary &s : summaries) {
    header.push_back(s.rule_set_id + " retrieved");
    header.push_back(s.rule_set_id + " relevant");
    header.push_back(s.rule_set_id + " precision");
  }
  std::string out = csv_row(header);
  if (summaries.empty()) return out;

  std::vector<std::string> observations;
  for (const RuleEvaluation &e : summaries.front().per_observation) {
    observations.push_back(e.observation);
  }
  for (std::size_t i = 0; i < observations.size(); ++i) {
    std::vector<std::string> row{observations[i]};
    for (const EvaluationSummary &s : summaries) {
      if (i >= s.per_observation.size() || s.per_observation[i].observation != observations[i]) {
        throw DataError("rule set '" + s.rule_set_id + "' covers different observations");
      }
      const RuleEvaluation &e = s.per_observation[i];
      row.push_back(std::to_string(e.retrieved));
      row.push_back(std::to_string(e.relevant));
      row.push_back(format_decimal(e.precision().value_or(0.0), 3, decimal_comma));
    }
    out += csv_row(row);
  }
  std::vector<std::string> mean{"MEAN"};
  for (const EvaluationSummary &s : summaries) {
    mean.push_back("");
    mean.push_back(format_decimal(s.mean_relevant, 0, decimal_comma));
    mean.push_back(format_decimal(s.weighted_precision.value_or(0.0), 3, decimal_comma));
  }
  out += csv_row(mean);
  return out;
}

// ---------------------------------------------------------------------------
// Induction

std::vector<InductionEntry> read_induction_entries(std::istream &in) {
  std::vector<CsvRecord> rows = read_csv(in);
  std::vector<InductionEntry> entries;
  if (rows.empty()) return entries;
  auto col = header_index(rows[0], {"term", "sentence"}, "definitions file");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRecord &r = rows[i];
    if (r.fields.size() < rows[0].fields.size()) {
      throw ParseError("definitions record has too few fields", r.line);
    }
    entries.push_back({r.fields[col["term"]], r.fields[col["sentence"]]});
  }
  return entries;
}

InductionReport induce_rule_statistics(const std::vector<InductionEntry> &entries,
                                       const Lexicon &lexicon) {
  InductionReport report;
  std::map<std::string, int> definitors, patterns, between;
  for (const InductionEntry &entry : entries) {
    Sentence s = analyze_sentence(entry.sentence, lexicon, "", 0);
    ContentView view = ContentView::of(s);
    std::vector<std::string> words = TermSpec::make(entry.term).words;
    const int n = view.size(), w = static_cast<int>(words.size());
    int term_end = -1;
    for (int i = 0; w > 0 && i + w <= n && term_end < 0; ++i) {
      bool hit = true;
      for (int k = 0; k < w && hit; ++k) hit = view.tokens[i + k]->surface == words[k];
      if (hit) term_end = i + w;
    }
    if (term_end < 0) {
      ++report.skipped;
      continue;
    }
    ++report.analyzed;

    auto is_verbal = [](Upos u) { return u == Upos::kAux || u == Upos::kVerb; };
    int p = term_end;
    while (p < n && !is_verbal(view.tokens[p]->upos)) ++p;
    if (p >= n) {
      ++definitors["(none)"];
      continue;
    }
    for (int i = term_end; i < p; ++i) ++between[view.tokens[i]->surface];

    std::string definitor = view.tokens[p]->surface;
    int q = p + 1;
    while (q < n && q < p + 3) {
      Upos u = view.tokens[q]->upos;
      if (!is_verbal(u) && u != Upos::kAdp && u != Upos::kPart) break;
      definitor += " " + view.tokens[q]->surface;
      ++q;
    }
    ++definitors[definitor];

    std::string pattern;
    int r = q;
    auto push = [&](int i) {
      pattern += (pattern.empty() ? "" : " ") + std::string(upos_name(view.tokens[i]->upos));
    };
    if (r < n && view.tokens[r]->upos == Upos::kDet) push(r++);
    while (r < n && (view.tokens[r]->upos == Upos::kAdj || view.tokens[r]->upos == Upos::kAdv)) {
      push(r++);
    }
    int nouns = 0;
    while (r < n && is_nominal(view.tokens[r]->upos)) {
      push(r++);
      ++nouns;
    }
    ++patterns[nouns > 0 ? pattern : "(none)"];
  }
  report.definitors = table_of(definitors, report.analyzed);
  report.genus_patterns = table_of(patterns, report.analyzed);
  report.between_words = table_of(between, report.analyzed);
  if (static_cast<int>(entries.size()) < kInductionTarget) {
    report.warnings.push_back("only " + std::to_string(entries.size()) +
                              " definitions; at least " + std::to_string(kInductionTarget) +
                              " are needed for stable statistics");
  }
  return report;
}

std::string induction_report_csv(const InductionReport &report) {
  std::string out = csv_row({"section", "key", "count", "fraction"});
  auto emit = [&](const char *section, const FreqTable &t) {
    for (const FreqEntry &e : t.entries) {
      out += csv_row({section, e.key, std::to_string(e.count), format_decimal(e.fraction, 6)});
    }
  };
  emit("definitor", report.definitors);
  emit("genus_pattern", report.genus_patterns);
  emit("between", report.between_words);
  return out;
}

}  // namespace defminer
