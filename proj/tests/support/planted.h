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


// Planted definition sets for the cohesion ordering checks: a convergent
// field whose definitions reuse a small shared vocabulary, and a fuzzy one
// whose definitions fall into small unrelated groups.

#ifndef DEFMINER_TESTS_PLANTED_H_
#define DEFMINER_TESTS_PLANTED_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "defminer/extraction.h"

namespace planted {

inline defminer::DefinitionRecord record(int i, std::string genus,
                                         std::vector<std::string> features) {
  defminer::DefinitionRecord d;
  d.doc_id = "p" + std::to_string(i);
  d.genus = std::move(genus);
  d.features = std::move(features);
  d.definition_text = d.doc_id;
  return d;
}

// Every definition takes 3 of 5 core words plus private noise.
inline std::vector<defminer::DefinitionRecord> cohesive(std::mt19937 &rng, int n = 24) {
  const std::vector<std::string> core{"data", "knowledge", "statistic", "insight", "method"};
  std::vector<defminer::DefinitionRecord> defs;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> pool = core;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::string> features(pool.begin(), pool.begin() + 3);
    features.push_back("noise" + std::to_string(i));
    defs.push_back(record(i, "field", features));
  }
  return defs;
}

// Groups of 3 definitions share a group vocabulary and nothing else.
inline std::vector<defminer::DefinitionRecord> fragmented(std::mt19937 &rng, int n = 24) {
  std::vector<defminer::DefinitionRecord> defs;
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < n; ++i) {
    const std::string g = std::to_string(i / 3);
    std::vector<std::string> features{"topic" + g + "x" + std::to_string(pick(rng)),
                                      "topic" + g + "y" + std::to_string(pick(rng)),
                                      "noise" + std::to_string(i)};
    defs.push_back(record(i, "genus" + g, features));
  }
  return defs;
}

}  // namespace planted

#endif  // DEFMINER_TESTS_PLANTED_H_
