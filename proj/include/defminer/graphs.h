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


// Ontology graph built from hyponym records, and the definition-similarity
// network with its threshold clustering.

#ifndef DEFMINER_GRAPHS_H_
#define DEFMINER_GRAPHS_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "defminer/analytics.h"
#include "defminer/extraction.h"

namespace defminer {

enum class GraphFormat { kDot, kGraphml, kCsv };

// Throws UsageError for anything but dot, graphml or csv.
GraphFormat graph_format_from_string(std::string_view name);

// Directed acyclic graph rooted at the term. Edges run from the broader to
// the narrower concept and carry the number of supporting records.
class OntologyGraph {
 public:
  explicit OntologyGraph(std::string root);

  const std::string &root() const { return root_; }
  const std::set<std::string> &nodes() const { return nodes_; }
  const std::map<std::pair<std::string, std::string>, int> &edges() const { return edges_; }
  const std::vector<std::string> &diagnostics() const { return diagnostics_; }

  // Adds `weight` to the edge src -> dst. Self-loops and edges closing a
  // cycle are refused with a diagnostic; returns whether the edge was added.
  bool add_edge(const std::string &src, const std::string &dst, int weight = 1);
  bool reaches(const std::string &from, const std::string &to) const;
  int weight(const std::string &src, const std::string &dst) const;
  void note(std::string diagnostic) { diagnostics_.push_back(std::move(diagnostic)); }

 private:
  std::string root_;
  std::set<std::string> nodes_;
  std::map<std::pair<std::string, std::string>, int> edges_;
  std::map<std::string, std::set<std::string>> children_;
  std::vector<std::string> diagnostics_;
};

// term -> hypernym -> hyponym. Records whose hyponym is the term are
// skipped with a diagnostic.
OntologyGraph build_ontology(std::string_view term, const std::vector<HyponymRecord> &records);

struct NetworkEdge {
  int u = 0;  // u < v
  int v = 0;
  int weight = 0;

  bool operator==(const NetworkEdge &) const = default;
};

struct DefinitionNetwork {
  std::vector<std::string> labels;               // "doc_id:sent_index", unique
  std::vector<std::vector<std::string>> words;   // sorted, distinct
  std::vector<NetworkEdge> edges;                // sorted by (u, v)
};

// Genus and feature tokens, stopwords removed, nouns singularized.
std::vector<std::string> definition_words(const DefinitionRecord &def,
                                          const Stopwords &stopwords);

// Edge (u, v) iff the word sets share at least min_weight words. Throws
// UsageError if min_weight < 1.
DefinitionNetwork build_definition_network(const std::vector<DefinitionRecord> &defs,
                                           const Stopwords &stopwords, int min_weight = 1,
                                           Exec exec = Exec::kParallel);
// Same, over precomputed word sets (sorted and distinct).
DefinitionNetwork build_definition_network(std::vector<std::string> labels,
                                           std::vector<std::vector<std::string>> words,
                                           int min_weight = 1, Exec exec = Exec::kParallel);

struct Clustering {
  std::vector<std::vector<int>> components;  // largest first
  double cohesion = 0.0;                     // |largest| / |nodes|, 0 when empty
};

// Connected components over edges of weight >= threshold.
Clustering cluster_network(const DefinitionNetwork &net, int threshold = 1);

std::string export_graph(const OntologyGraph &graph, GraphFormat format);
std::string export_graph(const DefinitionNetwork &net, GraphFormat format);
std::string clusters_json(const DefinitionNetwork &net, const Clustering &clustering);

// Parses a "src,dst,weight" edge list as written by export_graph.
std::vector<std::tuple<std::string, std::string, int>> import_edge_csv(std::string_view text);

}  // namespace defminer

#endif  // DEFMINER_GRAPHS_H_
