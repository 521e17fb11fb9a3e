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


// Brute-force reference implementations used as test oracles. They follow
// the written contracts directly and share no code with the library
// kernels they check.

#ifndef DEFMINER_TESTS_ORACLES_H_
#define DEFMINER_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "defminer/rule_engine.h"

namespace oracle {

// G = sum_i sum_j |x_i - x_j| / (2 n sum x), evaluated literally.
inline double gini(const std::vector<double> &x) {
  double num = 0.0, sum = 0.0;
  for (double a : x) {
    sum += a;
    for (double b : x) num += std::fabs(a - b);
  }
  return num / (2.0 * x.size() * sum);
}

// Does element `e` accept exactly the tokens [p, p + k) of the view?
inline bool accepts(const defminer::PatternElement &e, const defminer::ContentView &view,
                    const defminer::TermSpec &term, int p, int k) {
  using Kind = defminer::PatternElement::Kind;
  auto tok = [&](int i) -> const defminer::Token & { return *view.tokens[p + i]; };
  switch (e.kind) {
    case Kind::kSentenceStart:
      return p == 0 && k == 0;
    case Kind::kLiteral: {
      if (k != static_cast<int>(e.words.size())) return false;
      for (int i = 0; i < k; ++i) {
        if (tok(i).surface != e.words[i] && tok(i).lemma != e.words[i]) return false;
      }
      return true;
    }
    case Kind::kAcronym:
      return k == 1 && !term.acronym.empty() && tok(0).surface == term.acronym;
    case Kind::kTerm: {
      const int n = static_cast<int>(term.words.size());
      auto words_at = [&] {
        for (int i = 0; i < n; ++i) {
          if (tok(i).surface != term.words[i]) return false;
        }
        return n > 0;
      };
      if (k == n && words_at()) return true;
      if (k == n + 1 && !term.acronym.empty() && words_at() &&
          tok(n).surface == term.acronym) {
        return true;
      }
      return term.acronym_alone && k == 1 && tok(0).surface == term.acronym;
    }
    case Kind::kPos:
    case Kind::kArticle:
      if (k < e.min || k > e.max) return false;
      for (int i = 0; i < k; ++i) {
        bool ok = e.kind == Kind::kArticle
                      ? (tok(i).surface == "a" || tok(i).surface == "an" || tok(i).surface == "the")
                      : std::count(e.tags.begin(), e.tags.end(), tok(i).upos) > 0;
        if (!ok) return false;
      }
      return true;
    case Kind::kWildcard:
      return k >= e.min && k <= e.max;
  }
  return false;
}

// Every way the pattern can bind starting at `start`, as length tuples.
inline void enumerate(const defminer::PatternSpec &pattern, const defminer::ContentView &view,
                      const defminer::TermSpec &term, std::size_t element, int pos,
                      std::vector<int> &lengths, std::vector<std::vector<int>> &out) {
  if (element == pattern.elements.size()) {
    out.push_back(lengths);
    return;
  }
  for (int k = 0; pos + k <= view.size(); ++k) {
    if (!accepts(pattern.elements[element], view, term, pos, k)) continue;
    lengths.push_back(k);
    enumerate(pattern, view, term, element + 1, pos + k, lengths, out);
    lengths.pop_back();
  }
}

// Leftmost-longest scan: at each offset keep the binding with the largest
// end, ties broken by the lexicographically largest length tuple; skip
// empty bindings; resume after the match.
inline std::vector<defminer::RawMatch> scan(const defminer::PatternSpec &pattern,
                                            const defminer::ContentView &view,
                                            const defminer::TermSpec &term) {
  std::vector<defminer::RawMatch> matches;
  int s = 0;
  while (s < view.size()) {
    std::vector<std::vector<int>> all;
    std::vector<int> lengths;
    enumerate(pattern, view, term, 0, s, lengths, all);
    std::optional<defminer::RawMatch> best;
    for (const auto &tuple : all) {
      int end = s;
      for (int k : tuple) end += k;
      if (end == s) continue;
      if (!best || end > best->end || (end == best->end && tuple > best->lengths)) {
        best = defminer::RawMatch{s, end, tuple};
      }
    }
    if (best) {
      s = best->end;
      matches.push_back(*best);
    } else {
      ++s;
    }
  }
  return matches;
}

// Pair counts over per-definition feature sets, all pairs enumerated.
inline std::map<std::pair<std::string, std::string>, int> cooccurrence(
    const std::vector<std::vector<std::string>> &feature_lists) {
  std::map<std::pair<std::string, std::string>, int> counts;
  for (const auto &list : feature_lists) {
    std::set<std::string> s(list.begin(), list.end());
    for (const std::string &a : s) {
      for (const std::string &b : s) {
        if (a < b) ++counts[{a, b}];
      }
    }
  }
  return counts;
}

// All-pairs set intersection sizes of at least min_weight.
inline std::map<std::pair<int, int>, int> network(
    const std::vector<std::vector<std::string>> &words, int min_weight) {
  std::map<std::pair<int, int>, int> edges;
  for (std::size_t u = 0; u < words.size(); ++u) {
    std::set<std::string> a(words[u].begin(), words[u].end());
    for (std::size_t v = u + 1; v < words.size(); ++v) {
      int w = 0;
      for (const std::string &x : std::set<std::string>(words[v].begin(), words[v].end())) {
        w += a.count(x) ? 1 : 0;
      }
      if (w >= min_weight) edges[{static_cast<int>(u), static_cast<int>(v)}] = w;
    }
  }
  return edges;
}

}  // namespace oracle

#endif  // DEFMINER_TESTS_ORACLES_H_
