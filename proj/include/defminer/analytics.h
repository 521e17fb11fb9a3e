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


// Frequency, co-occurrence and dispersion statistics over extracted
// definitions and corpora.

#ifndef DEFMINER_ANALYTICS_H_
#define DEFMINER_ANALYTICS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defminer/corpus_io.h"
#include "defminer/exec.h"
#include "defminer/extraction.h"

namespace defminer {

struct FreqEntry {
  std::string key;
  int count = 0;
  double fraction = 0.0;

  bool operator==(const FreqEntry &) const = default;
};

// Entries sorted by count descending, ties by key. `total` is the number of
// definitions.
struct FreqTable {
  std::vector<FreqEntry> entries;
  int total = 0;

  const FreqEntry *find(std::string_view key) const;
};

struct PairEntry {
  std::string a;  // a < b
  std::string b;
  int count = 0;
  double fraction = 0.0;

  bool operator==(const PairEntry &) const = default;
};

// Pairs sorted by count descending, then (a, b).
struct CooccurrenceTable {
  std::vector<PairEntry> pairs;
  int total = 0;

  const PairEntry *find(std::string_view a, std::string_view b) const;
};

struct ObservationProfile {
  std::string term;
  int paper_count = 0;
  std::optional<int> first_year;
  std::optional<double> subject_gini;
};

FreqTable genus_distribution(const std::vector<DefinitionRecord> &defs);

// A feature counts once per definition that carries it.
FreqTable feature_distribution(const std::vector<DefinitionRecord> &defs);

// Throws UsageError if min_count < 1.
CooccurrenceTable feature_cooccurrence(const std::vector<DefinitionRecord> &defs,
                                       int min_count = 2, Exec exec = Exec::kParallel);

// G = sum_i sum_j |x_i - x_j| / (2 n sum x). No small-sample correction.
// Throws DataError on empty input, negative values or an all-zero list.
double gini_index(const std::vector<double> &counts);

// Shannon entropy in bits of a frequency table's counts.
double entropy_bits(const FreqTable &table);

// Documents whose normalized abstract contains the normalized term as whole
// words.
bool mentions_term(const Document &doc, std::string_view term);
ObservationProfile observation_profile(std::string_view term, const Corpus &corpus);

std::string freq_table_csv(const FreqTable &table, const std::string &key_header,
                           bool decimal_comma = false);
std::string cooccurrence_csv(const CooccurrenceTable &table, bool decimal_comma = false);
std::string profile_json(const ObservationProfile &profile);

}  // namespace defminer

#endif  // DEFMINER_ANALYTICS_H_
