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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Every tolerance and time budget is a
// named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "defminer/analytics.h"
#include "defminer/csv.h"
#include "defminer/evaluation.h"
#include "defminer/extraction.h"
#include "defminer/graphs.h"
#include "defminer/pipeline.h"
#include "defminer/rule_engine.h"
#include "json.hpp"
#include "oracles.h"
#include "paths.h"
#include "planted.h"
#include "synth.h"

using namespace defminer;

namespace {

// Tolerances.
constexpr double kPrecisionTol = 0.001;       // weighted precision, 3-decimal figures
constexpr double kRefersToTol = 0.005;        // the 2-decimal "refers to" figure
constexpr double kRatioTol = 1e-12;           // exact-ratio checks
constexpr double kGiniTol = 1e-9;             // Gini equalities and invariances
constexpr int kGiniCases = 1000;
constexpr int kNetworkFixtures = 300;
constexpr int kNetworkMaxDefs = 30;
constexpr int kPlantedTrials = 20;
constexpr int kGoldenClusterThreshold = 2;    // shared words per clustering edge
constexpr int kMatcherSentences = 500;
constexpr int kMatcherMaxTokens = 20;
constexpr double kFloor = 0.65;

// Time budgets in seconds.
constexpr double kBudget1 = 1.0;
constexpr double kBudget2 = 5.0;
constexpr double kBudget8 = 10.0;
constexpr double kNoBudget = 1e9;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string &what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char *name, double budget, const std::function<Outcome()> &fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception &e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.ok && secs >= budget) {
    out.ok = false;
    out.detail = "over the time budget";
  }
  if (!out.ok) ++failures;
  char timing[64];
  if (budget < kNoBudget) {
    std::snprintf(timing, sizeof(timing), "%.3fs, budget %.0fs", secs, budget);
  } else {
    std::snprintf(timing, sizeof(timing), "%.3fs", secs);
  }
  std::printf("[%s] %d %s (%s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name, timing,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 4) { return format_decimal(v, digits); }

const Lexicon &lexicon() {
  static const Lexicon lex = Lexicon::load(paths::data("lexicon.tsv"));
  return lex;
}
const RuleCatalog &catalog() {
  static const RuleCatalog c = load_rule_catalog(paths::data("default_catalog.tsv"));
  return c;
}
const Stopwords &stopwords() {
  static const Stopwords s = Stopwords::load(paths::data("stopwords.txt"));
  return s;
}

const EvaluationSummary &find_set(const std::vector<EvaluationSummary> &t, const std::string &id) {
  for (const auto &s : t) {
    if (s.rule_set_id == id) return s;
  }
  throw std::runtime_error("count fixture lacks rule set " + id);
}

Outcome validation_arithmetic() {
  Outcome o;
  auto t = load_count_table(paths::fixture("validation_counts.csv"));
  struct Want {
    const char *id;
    double precision;
    double tol;
    long mean;
  };
  std::ostringstream detail;
  for (const Want &w : {Want{"def-be", 0.652, kPrecisionTol, 72},
                        Want{"def-refer-to", 0.97, kRefersToTol, 8},
                        Want{"def-be+def-refer-to", 0.673, kPrecisionTol, 80}}) {
    const auto &s = find_set(t, w.id);
    o.require(s.per_observation.size() == 14, std::string(w.id) + ": expected 14 observations");
    const double p = weighted_precision(s.per_observation);
    const double m = mean_relevant(s.per_observation);
    o.require(std::fabs(p - w.precision) <= w.tol,
              std::string(w.id) + " precision " + fmt(p) + " vs " + fmt(w.precision, 3));
    o.require(std::lround(m) == w.mean,
              std::string(w.id) + " mean relevant " + fmt(m, 2) + " vs " + std::to_string(w.mean));
    detail << w.id << " " << fmt(p, 3) << "/" << std::lround(m) << "  ";
  }
  if (o.ok) o.detail = detail.str();
  return o;
}

Outcome golden_extraction() {
  Outcome o;
  AnnotatedCorpus corpus = annotate_corpus(
      load_corpus(paths::fixture("golden_corpus.jsonl"), CorpusFormat::kJsonl), lexicon());

  auto ai = extract_definitions(corpus, "artificial intelligence", catalog(), stopwords());
  std::vector<std::string> genera;
  for (const auto &d : ai) genera.push_back(d.genus);
  const std::vector<std::string> want_genera{"branch of computer science", "ability of a computer",
                                             "science", "branch of computer science",
                                             "study of intelligent machines"};
  o.require(genera == want_genera, "AI genera differ");

  const DefinitionRecord *row = nullptr;
  for (const auto &d : ai) {
    if (d.doc_id == "2-s2.0-85046415420") row = &d;
  }
  o.require(row && row->features == std::vector<std::string>{"perform", "function", "reason",
                                                             "typical", "human mind"},
            "features of 2-s2.0-85046415420 differ");

  std::set<std::pair<std::string, std::string>> found;
  for (const char *term : {"artificial intelligence", "data science"}) {
    for (const auto &h : extract_hyponyms(corpus, term, catalog(), stopwords())) {
      found.insert({h.hyponym, h.hypernym});
    }
  }
  const std::vector<std::pair<std::string, std::string>> want_pairs{
      {"image recognition", "application"},
      {"machine translator", "application"},
      {"medical diagnostics", "application"},
      {"bayesian", "technique"},
      {"natural language comprehension", "technology"},
      {"supervised learning", "technology"},
      {"data overfit", "task"},
      {"lexical analysis", "task"},
      {"predictive modeling", "task"},
      {"autoencoding", "methodology"},
  };
  for (const auto &p : want_pairs) {
    o.require(found.count(p) > 0, "missing pair " + p.first + " -> " + p.second);
  }
  if (o.ok) {
    o.detail = "5/5 genera, 10/10 pairs, feature row exact; 2-s2.0-85045918452 features not compared";
  }
  return o;
}

Outcome rule_selection() {
  Outcome o;
  auto t = load_count_table(paths::fixture("validation_counts.csv"));
  std::vector<Candidate> cands{
      {RuleSetSpec{"def-be", {"def-be"}}, find_set(t, "def-be")},
      {RuleSetSpec{"def-refer-to", {"def-refer-to"}}, find_set(t, "def-refer-to")},
      {RuleSetSpec{"def-be+def-refer-to", {"def-be", "def-refer-to"}},
       find_set(t, "def-be+def-refer-to")},
  };
  Selection s = rank_and_select(cands, kFloor, false);
  o.require(s.selected == std::optional<std::string>("def-be+def-refer-to"),
            "selected " + s.selected.value_or("nothing"));
  if (o.ok) o.detail = "selected def-be+def-refer-to at floor " + fmt(kFloor, 2);
  return o;
}

std::vector<DefinitionRecord> with_features(const std::vector<std::vector<std::string>> &lists) {
  std::vector<DefinitionRecord> defs;
  for (const auto &l : lists) {
    DefinitionRecord d;
    d.genus = "g";
    d.features = l;
    defs.push_back(d);
  }
  return defs;
}

Outcome statistics_semantics() {
  Outcome o;
  // Hand-built fixture.
  auto co = feature_cooccurrence(with_features({{"a", "b"}, {"a", "b", "c"}, {"b", "c"}}), 1);
  o.require(co.find("a", "b") && co.find("a", "b")->count == 2, "(a,b) != 2");
  o.require(co.find("b", "c") && co.find("b", "c")->count == 2, "(b,c) != 2");
  o.require(co.find("a", "c") && co.find("a", "c")->count == 1, "(a,c) != 1");

  // Ratios: a feature in 3 of 10 definitions, a pair in 1 of 10.
  std::vector<std::vector<std::string>> ten(10, std::vector<std::string>{"data"});
  for (int i = 0; i < 3; ++i) ten[i].push_back("knowledge");
  ten[9].push_back("deal");
  ten[9].push_back("machine");
  const double f = feature_distribution(with_features(ten)).find("knowledge")->fraction;
  const double p = feature_cooccurrence(with_features(ten), 1).find("deal", "machine")->fraction;
  o.require(std::fabs(f - 0.30) <= kRatioTol, "feature ratio " + fmt(f));
  o.require(std::fabs(p - 0.10) <= kRatioTol, "pair ratio " + fmt(p));

  // Random fixtures against brute force.
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> word(0, 9), len(0, 6), ndefs(0, 30);
  for (int i = 0; i < 300 && o.ok; ++i) {
    std::vector<std::vector<std::string>> lists(ndefs(rng));
    for (auto &l : lists) {
      for (int k = len(rng); k > 0; --k) l.push_back("w" + std::to_string(word(rng)));
    }
    auto defs = with_features(lists);
    auto want = oracle::cooccurrence(lists);
    auto got = feature_cooccurrence(defs, 1);
    std::map<std::pair<std::string, std::string>, int> got_map;
    for (const auto &e : got.pairs) got_map[{e.a, e.b}] = e.count;
    o.require(got_map == want, "co-occurrence differs from brute force");
    for (const auto &e : feature_distribution(defs).entries) {
      int brute = 0;
      for (const auto &l : lists) brute += std::count(l.begin(), l.end(), e.key) > 0;
      o.require(e.count == brute, "feature count differs from brute force");
    }
  }
  if (o.ok) o.detail = "3/10 -> " + fmt(f, 2) + ", 1/10 -> " + fmt(p, 2) + ", 300 random fixtures exact";
  return o;
}

Outcome gini_properties() {
  Outcome o;
  o.require(std::fabs(gini_index({7, 7, 7, 7, 7})) <= kGiniTol, "constant list not 0");
  o.require(std::fabs(gini_index({1, 0, 0, 0}) - 0.75) <= kGiniTol, "one-hot n=4 not 0.75");
  std::mt19937 rng(505);
  std::uniform_int_distribution<int> n(1, 30);
  std::uniform_real_distribution<double> value(0.0, 1000.0), scale(1e-3, 1e3);
  std::bernoulli_distribution zero(0.25);
  for (int i = 0; i < kGiniCases && o.ok; ++i) {
    std::vector<double> x(n(rng));
    for (double &v : x) v = zero(rng) ? 0.0 : value(rng);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x[0] = 1.0;
    const double g = gini_index(x);
    std::vector<double> scaled = x;
    const double k = scale(rng);
    for (double &v : scaled) v *= k;
    std::vector<double> shuffled = x;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    o.require(std::fabs(g - oracle::gini(x)) <= kGiniTol, "differs from the double sum");
    o.require(std::fabs(gini_index(scaled) - g) <= kGiniTol, "not scale invariant");
    o.require(std::fabs(gini_index(shuffled) - g) <= kGiniTol, "not permutation invariant");
  }
  if (o.ok) o.detail = std::to_string(kGiniCases) + " random cases within 1e-9";
  return o;
}

Outcome network_oracle() {
  Outcome o;
  std::mt19937 rng(606);
  std::uniform_int_distribution<int> n(0, kNetworkMaxDefs), len(0, 8), word(0, 14), minw(1, 3);
  for (int i = 0; i < kNetworkFixtures && o.ok; ++i) {
    std::vector<std::vector<std::string>> words(n(rng));
    for (auto &w : words) {
      for (int k = len(rng); k > 0; --k) w.push_back("w" + std::to_string(word(rng)));
      std::sort(w.begin(), w.end());
      w.erase(std::unique(w.begin(), w.end()), w.end());
    }
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < words.size(); ++k) labels.push_back(std::to_string(k));
    const int min_weight = minw(rng);
    auto net = build_definition_network(labels, words, min_weight);
    std::map<std::pair<int, int>, int> got;
    for (const auto &e : net.edges) got[{e.u, e.v}] = e.weight;
    o.require(got == oracle::network(words, min_weight), "network differs from brute force");
  }

  double ds_min = 1.0, ai_max = 0.0;
  for (int i = 0; i < kPlantedTrials; ++i) {
    ds_min = std::min(ds_min, cluster_network(build_definition_network(planted::cohesive(rng),
                                                                       stopwords()))
                                  .cohesion);
    ai_max = std::max(ai_max, cluster_network(build_definition_network(planted::fragmented(rng),
                                                                       stopwords()))
                                  .cohesion);
  }
  o.require(ds_min > ai_max, "planted cohesion ordering fails");

  // The same ordering on the published definition sentences.
  AnnotatedCorpus corpus = annotate_corpus(
      load_corpus(paths::fixture("golden_corpus.jsonl"), CorpusFormat::kJsonl), lexicon());
  auto cohesion_of = [&](const char *term) {
    auto defs = extract_definitions(corpus, term, catalog(), stopwords());
    return cluster_network(build_definition_network(defs, stopwords()), kGoldenClusterThreshold)
        .cohesion;
  };
  const double ds = cohesion_of("data science"), ai = cohesion_of("artificial intelligence");
  o.require(ds > ai, "published-sentence cohesion ordering fails");
  if (o.ok) {
    o.detail = std::to_string(kNetworkFixtures) + " fixtures exact; planted cohesion DS >= " +
               fmt(ds_min, 3) + " > AI <= " + fmt(ai_max, 3) + "; published sentences DS " +
               fmt(ds, 3) + " > AI " + fmt(ai, 3);
  }
  return o;
}

Outcome substitutes() {
  Outcome o;
  // End-to-end determinism over the golden corpus, manifest timestamp aside.
  for (const char *term : {"artificial intelligence", "data science"}) {
    RunConfig c;
    c.corpus_path = paths::fixture("golden_corpus.jsonl");
    c.term = term;
    apply_defaults(c);
    Inputs in1 = load_inputs(c), in2 = load_inputs(c);
    DefineResult r1 = run_define(c, in1), r2 = run_define(c, in2);
    o.require(define_outputs(r1, c) == define_outputs(r2, c), "outputs differ between runs");
    auto m1 = nlohmann::ordered_json::parse(run_manifest(c, in1, r1, "a"));
    auto m2 = nlohmann::ordered_json::parse(run_manifest(c, in2, r2, "b"));
    m1.erase("timestamp");
    m2.erase("timestamp");
    o.require(m1 == m2, "manifests differ beyond the timestamp");
  }
  if (o.ok) {
    o.detail =
        "corpus-scale counts depend on a bibliographic snapshot not shipped here; substituted by "
        "determinism (checked here), matcher oracle (criterion 8) and golden tests (criterion 2)";
  }
  return o;
}

Outcome matcher_soundness() {
  Outcome o;
  std::mt19937 rng(808);
  std::vector<Matcher> matchers;
  for (const Rule &r : catalog().rules()) matchers.push_back(compile_rule(r));
  const TermSpec terms[] = {TermSpec::make("artificial intelligence", false),
                            TermSpec::make("artificial intelligence", true)};
  int comparisons = 0;
  for (int i = 0; i < kMatcherSentences && o.ok; ++i) {
    Sentence s = synth::random_sentence(rng, kMatcherMaxTokens);
    ContentView view = ContentView::of(s);
    for (const TermSpec &term : terms) {
      for (const Matcher &m : matchers) {
        ++comparisons;
        o.require(m.scan(view, term) == oracle::scan(m.rule().pattern, view, term),
                  m.rule_id() + " differs on '" + s.raw_text + "'");
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(matchers.size()) + " rules x " + std::to_string(kMatcherSentences) +
               " sentences x 2 term modes = " + std::to_string(comparisons) + " comparisons";
  }
  return o;
}

}  // namespace

int main() {
  criterion(1, "validation-table arithmetic", kBudget1, validation_arithmetic);
  criterion(2, "golden extraction", kBudget2, golden_extraction);
  criterion(3, "rule selection", kNoBudget, rule_selection);
  criterion(4, "statistics semantics", kNoBudget, statistics_semantics);
  criterion(5, "gini properties", kNoBudget, gini_properties);
  criterion(6, "network oracle and cohesion ordering", kNoBudget, network_oracle);
  criterion(7, "corpus-scale substitutes", kNoBudget, substitutes);
  criterion(8, "matcher soundness", kBudget8, matcher_soundness);
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
