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


#include "defminer/analytics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <omp.h>

#include "defminer/csv.h"
#include "defminer/errors.h"
#include "json.hpp"

namespace defminer {
namespace {

FreqTable make_table(const std::map<std::string, int> &counts, int total) {
  FreqTable table;
  table.total = total;
  for (const auto &[key, count] : counts) {
    table.entries.push_back(
        {key, count, total > 0 ? static_cast<double>(count) / total : 0.0});
  }
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const FreqEntry &x, const FreqEntry &y) { return x.count > y.count; });
  return table;
}

std::vector<std::string> distinct(const std::vector<std::string> &words) {
  std::vector<std::string> out(words);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

using PairCounts = std::map<std::pair<std::string, std::string>, int>;

void count_pairs(const std::vector<std::string> &features, PairCounts &counts) {
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (std::size_t j = i + 1; j < features.size(); ++j) {
      ++counts[{features[i], features[j]}];
    }
  }
}

}  // namespace

const FreqEntry *FreqTable::find(std::string_view key) const {
  for (const FreqEntry &e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const PairEntry *CooccurrenceTable::find(std::string_view a, std::string_view b) const {
  if (b < a) std::swap(a, b);
  for (const PairEntry &p : pairs) {
    if (p.a == a && p.b == b) return &p;
  }
  return nullptr;
}

FreqTable genus_distribution(const std::vector<DefinitionRecord> &defs) {
  std::map<std::string, int> counts;
  for (const DefinitionRecord &d : defs) ++counts[d.genus];
  return make_table(counts, static_cast<int>(defs.size()));
}

FreqTable feature_distribution(const std::vector<DefinitionRecord> &defs) {
  std::map<std::string, int> counts;
  for (const DefinitionRecord &d : defs) {
    for (const std::string &f : distinct(d.features)) ++counts[f];
  }
  return make_table(counts, static_cast<int>(defs.size()));
}

CooccurrenceTable feature_cooccurrence(const std::vector<DefinitionRecord> &defs,
                                       int min_count, Exec exec) {
  if (min_count < 1) throw UsageError("min_count must be >= 1");
  const long n = static_cast<long>(defs.size());
  PairCounts counts;
  if (exec == Exec::kSerial) {
    for (long i = 0; i < n; ++i) count_pairs(distinct(defs[i].features), counts);
  } else {
    std::vector<PairCounts> partial(omp_get_max_threads());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      count_pairs(distinct(defs[i].features), partial[omp_get_thread_num()]);
    }
    for (const PairCounts &p : partial) {
      for (const auto &[key, c] : p) counts[key] += c;
    }
  }

  CooccurrenceTable table;
  table.total = static_cast<int>(n);
  for (const auto &[key, count] : counts) {
    if (count < min_count) continue;
    table.pairs.push_back({key.first, key.second, count, static_cast<double>(count) / n});
  }
  std::stable_sort(table.pairs.begin(), table.pairs.end(),
                   [](const PairEntry &x, const PairEntry &y) { return x.count > y.count; });
  return table;
}

double gini_index(const std::vector<double> &counts) {
  if (counts.empty()) throw DataError("gini index of an empty distribution");
  double sum = 0.0;
  for (double x : counts) {
    if (x < 0 || std::isnan(x)) throw DataError("gini index needs non-negative counts");
    sum += x;
  }
  if (sum <= 0.0) throw DataError("gini index of an all-zero distribution");

  // With x sorted ascending, sum_i sum_j |x_i - x_j| = 2 sum_i (2i - n + 1) x_i.
  std::vector<double> x(counts);
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += (2.0 * i - n + 1.0) * x[i];
  double g = 2.0 * acc / (2.0 * n * sum);
  return std::clamp(g, 0.0, 1.0);
}

double entropy_bits(const FreqTable &table) {
  double total = 0.0;
  for (const FreqEntry &e : table.entries) total += e.count;
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (const FreqEntry &e : table.entries) {
    if (e.count == 0) continue;
    double p = e.count / total;
    h -= p * std::log2(p);
  }
  return h;
}

bool mentions_term(const Document &doc, std::string_view term) {
  auto padded = [](std::string s) {
    if (!s.empty() && s.back() == '.') s.pop_back();
    return " " + s + " ";
  };
  std::string needle = padded(normalize_text(term));
  if (needle.size() <= 2) return false;
  return padded(normalize_text(doc.abstract_text)).find(needle) != std::string::npos;
}

ObservationProfile observation_profile(std::string_view term, const Corpus &corpus) {
  ObservationProfile profile;
  profile.term = normalize_text(term);
  std::map<std::string, double> areas;
  for (const Document &doc : corpus) {
    if (!mentions_term(doc, term)) continue;
    ++profile.paper_count;
    if (doc.year && (!profile.first_year || *doc.year < *profile.first_year)) {
      profile.first_year = doc.year;
    }
    for (const auto &[area, count] : doc.subject_areas) areas[area] += count;
  }
  std::vector<double> values;
  double sum = 0.0;
  for (const auto &[area, count] : areas) {
    values.push_back(count);
    sum += count;
  }
  if (sum > 0) profile.subject_gini = gini_index(values);
  return profile;
}

std::string freq_table_csv(const FreqTable &table, const std::string &key_header,
                           bool decimal_comma) {
  std::string out = csv_row({key_header, "count", "fraction"});
  for (const FreqEntry &e : table.entries) {
    out += csv_row({e.key, std::to_string(e.count), format_decimal(e.fraction, 6, decimal_comma)});
  }
  return out;
}

std::string cooccurrence_csv(const CooccurrenceTable &table, bool decimal_comma) {
  std::string out = csv_row({"a", "b", "count", "fraction"});
  for (const PairEntry &p : table.pairs) {
    out += csv_row({p.a, p.b, std::to_string(p.count),
                    format_decimal(p.fraction, 6, decimal_comma)});
  }
  return out;
}

std::string profile_json(const ObservationProfile &profile) {
  nlohmann::ordered_json j;
  j["term"] = profile.term;
  j["paper_count"] = profile.paper_count;
  j["first_year"] = profile.first_year ? nlohmann::ordered_json(*profile.first_year) : nullptr;
  j["subject_gini"] =
      profile.subject_gini ? nlohmann::ordered_json(*profile.subject_gini) : nullptr;
  return j.dump(2) + "\n";
}

}  // namespace defminer
