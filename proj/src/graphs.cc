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


#include "defminer/graphs.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "defminer/csv.h"
#include "defminer/errors.h"
#include "json.hpp"

namespace defminer {
namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

using EdgeList = std::vector<std::tuple<std::string, std::string, int>>;

std::string render(const std::set<std::string> &nodes, const EdgeList &edges, bool directed,
                   GraphFormat format) {
  std::string out;
  switch (format) {
    case GraphFormat::kDot: {
      out += directed ? "digraph ontology {\n" : "graph network {\n";
      for (const std::string &n : nodes) out += "  " + dot_quote(n) + ";\n";
      const char *arrow = directed ? " -> " : " -- ";
      for (const auto &[s, d, w] : edges) {
        out += "  " + dot_quote(s) + arrow + dot_quote(d) + " [label=\"" + std::to_string(w) +
               "\", weight=" + std::to_string(w) + "];\n";
      }
      out += "}\n";
      break;
    }
    case GraphFormat::kGraphml: {
      out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
      out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
      out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
      out += std::string("  <graph id=\"G\" edgedefault=\"") +
             (directed ? "directed" : "undirected") + "\">\n";
      for (const std::string &n : nodes) out += "    <node id=\"" + xml_escape(n) + "\"/>\n";
      for (const auto &[s, d, w] : edges) {
        out += "    <edge source=\"" + xml_escape(s) + "\" target=\"" + xml_escape(d) +
               "\"><data key=\"weight\">" + std::to_string(w) + "</data></edge>\n";
      }
      out += "  </graph>\n</graphml>\n";
      break;
    }
    case GraphFormat::kCsv:
      out += csv_row({"src", "dst", "weight"});
      for (const auto &[s, d, w] : edges) out += csv_row({s, d, std::to_string(w)});
      break;
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

int shared_words(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  int n = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

GraphFormat graph_format_from_string(std::string_view name) {
  if (name == "dot") return GraphFormat::kDot;
  if (name == "graphml") return GraphFormat::kGraphml;
  if (name == "csv") return GraphFormat::kCsv;
  throw UsageError("unknown graph format: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Ontology

OntologyGraph::OntologyGraph(std::string root) : root_(std::move(root)) {
  nodes_.insert(root_);
}

bool OntologyGraph::reaches(const std::string &from, const std::string &to) const {
  std::vector<const std::string *> stack{&from};
  std::set<std::string> seen{from};
  while (!stack.empty()) {
    const std::string &n = *stack.back();
    stack.pop_back();
    if (n == to) return true;
    auto it = children_.find(n);
    if (it == children_.end()) continue;
    for (const std::string &c : it->second) {
      if (seen.insert(c).second) stack.push_back(&c);
    }
  }
  return false;
}

bool OntologyGraph::add_edge(const std::string &src, const std::string &dst, int weight) {
  if (src == dst) {
    diagnostics_.push_back("self-loop refused: " + src);
    return false;
  }
  if (nodes_.count(dst) && nodes_.count(src) && reaches(dst, src)) {
    diagnostics_.push_back("cycle refused: " + src + " -> " + dst);
    return false;
  }
  nodes_.insert(src);
  nodes_.insert(dst);
  children_[src].insert(dst);
  edges_[{src, dst}] += weight;
  return true;
}

int OntologyGraph::weight(const std::string &src, const std::string &dst) const {
  auto it = edges_.find({src, dst});
  return it == edges_.end() ? 0 : it->second;
}

OntologyGraph build_ontology(std::string_view term, const std::vector<HyponymRecord> &records) {
  const std::string root = normalize_text(term);
  OntologyGraph graph(root);
  for (const HyponymRecord &r : records) {
    if (r.hyponym == root) {
      graph.note("hyponym equals the term, skipped: " + r.sentence_text);
      continue;
    }
    if (r.hypernym == root) {
      graph.add_edge(root, r.hyponym);
      continue;
    }
    if (graph.add_edge(r.hypernym, r.hyponym)) graph.add_edge(root, r.hypernym);
  }
  return graph;
}

std::string export_graph(const OntologyGraph &graph, GraphFormat format) {
  EdgeList edges;
  for (const auto &[key, w] : graph.edges()) edges.emplace_back(key.first, key.second, w);
  return render(graph.nodes(), edges, true, format);
}

// ---------------------------------------------------------------------------
// Definition network

std::vector<std::string> definition_words(const DefinitionRecord &def,
                                          const Stopwords &stopwords) {
  std::vector<std::string> words;
  auto add_phrase = [&](const std::string &phrase) {
    std::istringstream in(phrase);
    std::string w;
    while (in >> w) {
      if (stopwords.contains(w)) continue;
      words.push_back(singular_form(w));
    }
  };
  add_phrase(def.genus);
  for (const std::string &f : def.features) add_phrase(f);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

DefinitionNetwork build_definition_network(std::vector<std::string> labels,
                                           std::vector<std::vector<std::string>> words,
                                           int min_weight, Exec exec) {
  if (min_weight < 1) throw UsageError("network min_weight must be >= 1");
  if (labels.size() != words.size()) throw UsageError("labels and word sets differ in size");
  DefinitionNetwork net;
  net.labels = std::move(labels);
  net.words = std::move(words);
  const int n = static_cast<int>(net.words.size());

  std::vector<std::vector<NetworkEdge>> rows(n);
  auto fill_row = [&](int u) {
    for (int v = u + 1; v < n; ++v) {
      int w = shared_words(net.words[u], net.words[v]);
      if (w >= min_weight) rows[u].push_back({u, v, w});
    }
  };
  if (exec == Exec::kSerial) {
    for (int u = 0; u < n; ++u) fill_row(u);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (int u = 0; u < n; ++u) fill_row(u);
  }
  for (auto &row : rows) net.edges.insert(net.edges.end(), row.begin(), row.end());
  return net;
}

DefinitionNetwork build_definition_network(const std::vector<DefinitionRecord> &defs,
                                           const Stopwords &stopwords, int min_weight,
                                           Exec exec) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> words;
  std::map<std::string, int> seen;
  for (const DefinitionRecord &d : defs) {
    std::string label = d.doc_id + ":" + std::to_string(d.sent_index);
    int k = seen[label]++;
    if (k > 0) label += "." + std::to_string(k);
    labels.push_back(std::move(label));
    words.push_back(definition_words(d, stopwords));
  }
  return build_definition_network(std::move(labels), std::move(words), min_weight, exec);
}

Clustering cluster_network(const DefinitionNetwork &net, int threshold) {
  if (threshold < 1) throw UsageError("cluster threshold must be >= 1");
  const int n = static_cast<int>(net.labels.size());
  UnionFind uf(n);
  for (const NetworkEdge &e : net.edges) {
    if (e.weight >= threshold) uf.unite(e.u, e.v);
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);

  Clustering c;
  for (auto &[root, members] : groups) c.components.push_back(std::move(members));
  std::stable_sort(c.components.begin(), c.components.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });
  if (n > 0) c.cohesion = static_cast<double>(c.components.front().size()) / n;
  return c;
}

std::string export_graph(const DefinitionNetwork &net, GraphFormat format) {
  std::set<std::string> nodes(net.labels.begin(), net.labels.end());
  EdgeList edges;
  for (const NetworkEdge &e : net.edges) {
    const std::string &a = net.labels[e.u];
    const std::string &b = net.labels[e.v];
    if (a < b) {
      edges.emplace_back(a, b, e.weight);
    } else {
      edges.emplace_back(b, a, e.weight);
    }
  }
  std::sort(edges.begin(), edges.end());
  return render(nodes, edges, false, format);
}

std::string clusters_json(const DefinitionNetwork &net, const Clustering &clustering) {
  nlohmann::ordered_json j;
  j["nodes"] = net.labels.size();
  j["cohesion"] = clustering.cohesion;
  auto comps = nlohmann::ordered_json::array();
  for (const auto &members : clustering.components) {
    std::vector<std::string> names;
    for (int m : members) names.push_back(net.labels[m]);
    std::sort(names.begin(), names.end());
    comps.push_back(names);
  }
  j["components"] = comps;
  return j.dump(2) + "\n";
}

std::vector<std::tuple<std::string, std::string, int>> import_edge_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<CsvRecord> rows = read_csv(in);
  std::vector<std::tuple<std::string, std::string, int>> edges;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CsvRecord &r = rows[i];
    if (i == 0 && !r.fields.empty() && r.fields[0] == "src") continue;
    if (r.fields.size() != 3) throw ParseError("edge list needs src,dst,weight", r.line);
    try {
      std::size_t used = 0;
      int w = std::stoi(r.fields[2], &used);
      if (used != r.fields[2].size()) throw std::invalid_argument("weight");
      edges.emplace_back(r.fields[0], r.fields[1], w);
    } catch (const std::logic_error &) {
      throw ParseError("bad edge weight '" + r.fields[2] + "'", r.line);
    }
  }
  return edges;
}

}  // namespace defminer
