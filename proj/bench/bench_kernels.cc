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


// Serial reference kernels against their OpenMP versions. Each benchmark
// takes the execution mode as its first argument (0 serial, 1 parallel).

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "defminer/analytics.h"
#include "defminer/corpus_io.h"
#include "defminer/extraction.h"
#include "defminer/graphs.h"
#include "defminer/rule_engine.h"
#include "paths.h"
#include "planted.h"
#include "synth.h"

using namespace defminer;

namespace {

Exec mode(const benchmark::State &state) {
  return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel;
}

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

Corpus synthetic_corpus(int documents) {
  std::mt19937 rng(1);
  Corpus c;
  for (int d = 0; d < documents; ++d) {
    std::string text;
    for (int s = 0; s < 6; ++s) {
      Sentence sent = synth::random_sentence(rng);
      text += sent.raw_text + ". ";
    }
    text += "Artificial intelligence is a branch of computer science. ";
    text += "Artificial intelligence applications such as computer vision, robots and text mining.";
    c.push_back(Document{"d" + std::to_string(d), text, {}, std::nullopt});
  }
  return c;
}

void BM_Annotate(benchmark::State &state) {
  Corpus corpus = synthetic_corpus(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(annotate_corpus(corpus, lexicon(), mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Extract(benchmark::State &state) {
  AnnotatedCorpus corpus = annotate_corpus(synthetic_corpus(static_cast<int>(state.range(1))),
                                           lexicon(), Exec::kSerial);
  Extractor ex(catalog(), "artificial intelligence", stopwords());
  for (auto _ : state) {
    benchmark::DoNotOptimize(ex.definitions(corpus, nullptr, mode(state)));
    benchmark::DoNotOptimize(ex.hyponyms(corpus, nullptr, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * corpus.sentences.size());
}

void BM_Cooccurrence(benchmark::State &state) {
  std::mt19937 rng(2);
  auto defs = planted::cohesive(rng, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(feature_cooccurrence(defs, 1, mode(state)));
}

void BM_Network(benchmark::State &state) {
  std::mt19937 rng(3);
  auto defs = planted::cohesive(rng, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_definition_network(defs, stopwords(), 1, mode(state)));
  }
}

}  // namespace

BENCHMARK(BM_Annotate)->ArgsProduct({{0, 1}, {200, 2000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Extract)->ArgsProduct({{0, 1}, {200, 2000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cooccurrence)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Network)->ArgsProduct({{0, 1}, {500, 2000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
