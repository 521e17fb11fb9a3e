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


#include "defminer/pipeline.h"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "defminer/checksum.h"
#include "defminer/csv.h"
#include "json.hpp"

#ifndef DEFMINER_DATA_DIR
#define DEFMINER_DATA_DIR "data"
#endif

namespace defminer {
namespace fs = std::filesystem;

namespace {

int parse_int(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::logic_error &) {
  }
  throw UsageError(key + ": expected an integer, got '" + value + "'");
}

double parse_double(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::logic_error &) {
  }
  throw UsageError(key + ": expected a number, got '" + value + "'");
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw UsageError(key + ": expected true or false, got '" + value + "'");
}

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void require_file(const fs::path &path, const char *key) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw DataError(std::string(key) + ": cannot open " + path.string());
  }
}

std::string join(const std::vector<std::string> &parts, const char *sep) {
  std::string out;
  for (const std::string &p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

}  // namespace

fs::path default_data_dir() {
  if (const char *env = std::getenv("DEFMINER_DATA_DIR"); env && *env) return env;
  return DEFMINER_DATA_DIR;
}

void apply_defaults(RunConfig &config) {
  if (config.rule_catalog_path.empty()) {
    config.rule_catalog_path = default_data_dir() / "default_catalog.tsv";
  }
  if (config.stopword_path.empty()) config.stopword_path = default_data_dir() / "stopwords.txt";
  if (config.lexicon_path.empty()) config.lexicon_path = default_data_dir() / "lexicon.tsv";
}

std::map<std::string, std::string> read_config_file(std::istream &in) {
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t number = 0;
  RunConfig probe;
  while (std::getline(in, line)) {
    ++number;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    set_config_value(probe, key, value);  // rejects unknown keys early
    values[key] = value;
  }
  return values;
}

std::map<std::string, std::string> load_config_file(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  return read_config_file(in);
}

void set_config_value(RunConfig &config, const std::string &key, const std::string &value) {
  if (key == "corpus_path") {
    config.corpus_path = value;
  } else if (key == "corpus_format") {
    config.corpus_format = value;
  } else if (key == "conllu_path") {
    if (value.empty()) {
      config.conllu_path.reset();
    } else {
      config.conllu_path = value;
    }
  } else if (key == "term") {
    config.term = value;
  } else if (key == "rule_catalog_path") {
    config.rule_catalog_path = value;
  } else if (key == "stopword_path") {
    config.stopword_path = value;
  } else if (key == "lexicon_path") {
    config.lexicon_path = value;
  } else if (key == "output_dir") {
    config.output_dir = value;
  } else if (key == "min_cooccurrence") {
    config.min_cooccurrence = parse_int(key, value);
  } else if (key == "network_min_weight") {
    config.network_min_weight = parse_int(key, value);
  } else if (key == "cluster_threshold") {
    config.cluster_threshold = parse_int(key, value);
  } else if (key == "precision_floor") {
    config.precision_floor = parse_double(key, value);
  } else if (key == "decimal_comma") {
    config.decimal_comma = parse_bool(key, value);
  } else {
    throw UsageError("unknown config key: " + key);
  }
}

void validate_config(const RunConfig &config, bool needs_corpus, bool needs_term) {
  if (config.min_cooccurrence < 1) throw UsageError("min_cooccurrence must be >= 1");
  if (config.network_min_weight < 1) throw UsageError("network_min_weight must be >= 1");
  if (config.cluster_threshold < 1) throw UsageError("cluster_threshold must be >= 1");
  if (!(config.precision_floor > 0.0 && config.precision_floor <= 1.0)) {
    throw UsageError("precision_floor must be in (0, 1]");
  }
  if (needs_term && normalize_text(config.term).empty()) throw UsageError("term is required");
  if (needs_corpus) {
    if (config.corpus_path.empty()) throw UsageError("corpus_path is required");
    require_file(config.corpus_path, "corpus_path");
    if (config.conllu_path) require_file(*config.conllu_path, "conllu_path");
  }
  require_file(config.rule_catalog_path, "rule_catalog_path");
  require_file(config.stopword_path, "stopword_path");
  if (needs_corpus && !config.conllu_path) require_file(config.lexicon_path, "lexicon_path");
}

Inputs load_inputs(const RunConfig &config) {
  Inputs in;
  run_stage("load catalog", [&] {
    in.catalog = load_rule_catalog(config.rule_catalog_path);
    in.catalog_sha256 = sha256_file(config.rule_catalog_path);
  });
  run_stage("load stopwords", [&] {
    in.stopwords = Stopwords::load(config.stopword_path);
    in.stopwords_sha256 = sha256_file(config.stopword_path);
  });
  run_stage("ingest", [&] {
    CorpusFormat format = config.corpus_format.empty()
                              ? corpus_format_from_path(config.corpus_path)
                              : corpus_format_from_string(config.corpus_format);
    Corpus corpus = load_corpus(config.corpus_path, format);
    if (config.conllu_path) {
      std::ifstream f(*config.conllu_path);
      if (!f) throw DataError("cannot open " + config.conllu_path->string());
      std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      in.corpus = annotate_corpus(std::move(corpus), parse_conllu(text));
    } else {
      Lexicon lexicon = Lexicon::load(config.lexicon_path);
      in.lexicon_sha256 = sha256_file(config.lexicon_path);
      in.corpus = annotate_corpus(std::move(corpus), lexicon);
    }
  });
  return in;
}

DefineResult run_define(const RunConfig &config, const Inputs &inputs) {
  DefineResult r;
  run_stage("extract", [&] {
    Extractor extractor(inputs.catalog, config.term, inputs.stopwords);
    r.definitions = extractor.definitions(inputs.corpus, &r.diagnostics);
    r.hyponyms = extractor.hyponyms(inputs.corpus, &r.diagnostics);
    r.synonyms = extract_synonyms(inputs.corpus, config.term);
  });
  run_stage("analytics", [&] {
    r.genera = genus_distribution(r.definitions);
    r.features = feature_distribution(r.definitions);
    r.cooccurrence = feature_cooccurrence(r.definitions, config.min_cooccurrence);
    r.profile = observation_profile(config.term, inputs.corpus.documents);
  });
  run_stage("graphs", [&] {
    r.ontology = build_ontology(config.term, r.hyponyms);
    r.network =
        build_definition_network(r.definitions, inputs.stopwords, config.network_min_weight);
    r.clusters = cluster_network(r.network, config.cluster_threshold);
  });
  return r;
}

std::string definitions_csv(const std::vector<DefinitionRecord> &defs) {
  std::string out = csv_row({"doc_id", "sent_index", "definiendum", "definitor", "genus",
                             "features", "definition", "rule_id"});
  for (const DefinitionRecord &d : defs) {
    out += csv_row({d.doc_id, std::to_string(d.sent_index), d.definiendum, d.definitor, d.genus,
                    join(d.features, "; "), d.definition_text, d.rule_id});
  }
  return out;
}

std::string hyponyms_csv(const std::vector<HyponymRecord> &records) {
  std::string out =
      csv_row({"doc_id", "sent_index", "term", "hyponym", "hypernym", "rule_id", "sentence"});
  for (const HyponymRecord &h : records) {
    out += csv_row({h.doc_id, std::to_string(h.sent_index), h.term, h.hyponym, h.hypernym,
                    h.rule_id, h.sentence_text});
  }
  return out;
}

std::string synonyms_csv(const std::vector<SynonymRecord> &records) {
  std::string out = csv_row({"doc_id", "sent_index", "term", "synonym", "sentence"});
  for (const SynonymRecord &s : records) {
    out += csv_row(
        {s.doc_id, std::to_string(s.sent_index), s.term, s.synonym, s.sentence_text});
  }
  return out;
}

std::map<std::string, std::string> define_outputs(const DefineResult &r,
                                                  const RunConfig &config) {
  const bool comma = config.decimal_comma;
  return {
      {"definitions.csv", definitions_csv(r.definitions)},
      {"hyponyms.csv", hyponyms_csv(r.hyponyms)},
      {"synonyms.csv", synonyms_csv(r.synonyms)},
      {"genera.csv", freq_table_csv(r.genera, "genus", comma)},
      {"features.csv", freq_table_csv(r.features, "feature", comma)},
      {"cooccurrence.csv", cooccurrence_csv(r.cooccurrence, comma)},
      {"ontology.dot", export_graph(r.ontology, GraphFormat::kDot)},
      {"ontology.graphml", export_graph(r.ontology, GraphFormat::kGraphml)},
      {"network.csv", export_graph(r.network, GraphFormat::kCsv)},
      {"clusters.json", clusters_json(r.network, r.clusters)},
      {"profile.json", profile_json(r.profile)},
  };
}

std::string run_manifest(const RunConfig &config, const Inputs &inputs, const DefineResult &r,
                         const std::string &timestamp) {
  nlohmann::ordered_json j;
  j["tool"] = "defminer";
  j["version"] = kVersion;
  j["timestamp"] = timestamp;
  j["term"] = normalize_text(config.term);
  j["tagger"] = inputs.corpus.heuristic_tags ? "heuristic" : "conllu";
  j["catalog_sha256"] = inputs.catalog_sha256;
  j["stopwords_sha256"] = inputs.stopwords_sha256;
  if (!inputs.lexicon_sha256.empty()) j["lexicon_sha256"] = inputs.lexicon_sha256;
  j["documents"] = inputs.corpus.documents.size();
  j["sentences"] = inputs.corpus.sentences.size();
  nlohmann::ordered_json counts;
  counts["definitions"] = r.definitions.size();
  counts["hyponyms"] = r.hyponyms.size();
  counts["synonyms"] = r.synonyms.size();
  counts["genera"] = r.genera.entries.size();
  counts["features"] = r.features.entries.size();
  counts["cooccurrence"] = r.cooccurrence.pairs.size();
  counts["ontology_edges"] = r.ontology.edges().size();
  counts["network_edges"] = r.network.edges.size();
  counts["clusters"] = r.clusters.components.size();
  j["counts"] = counts;
  nlohmann::ordered_json diag;
  diag["definition_candidates"] = r.diagnostics.definition_candidates;
  diag["start_rejected"] = r.diagnostics.start_rejected;
  diag["genus_structure_rejected"] = r.diagnostics.genus_structure_rejected;
  diag["genus_not_found"] = r.diagnostics.genus_not_found;
  diag["duplicate_definitions"] = r.diagnostics.duplicate_definitions;
  diag["hyponym_without_hypernym"] = r.diagnostics.hyponym_without_hypernym;
  diag["hyponym_pieces_rejected"] = r.diagnostics.hyponym_pieces_rejected;
  diag["ontology"] = r.ontology.diagnostics();
  j["diagnostics"] = diag;
  j["catalog_warnings"] = inputs.catalog.warnings();
  return j.dump(2) + "\n";
}

void write_outputs_atomically(const fs::path &output_dir,
                              const std::map<std::string, std::string> &files) {
  fs::create_directories(output_dir);
  std::random_device rd;
  fs::path staging = output_dir / (".defminer-staging-" + std::to_string(rd()));
  std::vector<fs::path> placed;
  try {
    fs::create_directory(staging);
    for (const auto &[name, body] : files) {
      std::ofstream out(staging / name, std::ios::binary);
      out << body;
      if (!out.flush()) throw DataError("cannot write " + (staging / name).string());
    }
    for (const auto &[name, body] : files) {
      fs::rename(staging / name, output_dir / name);
      placed.push_back(output_dir / name);
    }
    fs::remove_all(staging);
  } catch (...) {
    std::error_code ec;
    for (const fs::path &p : placed) fs::remove(p, ec);
    fs::remove_all(staging, ec);
    throw;
  }
}

CompareEntry compare_entry(const std::string &term, const DefineResult &result) {
  CompareEntry e;
  e.term = normalize_text(term);
  e.definitions = static_cast<int>(result.definitions.size());
  e.cohesion = result.clusters.cohesion;
  e.genus_entropy = entropy_bits(result.genera);
  auto top = [](const FreqTable &t) {
    std::vector<FreqEntry> out(t.entries.begin(),
                               t.entries.begin() + std::min<std::size_t>(5, t.entries.size()));
    return out;
  };
  e.top_genera = top(result.genera);
  e.top_features = top(result.features);
  return e;
}

void flag_fuzzy(std::vector<CompareEntry> &entries) {
  if (entries.size() < 2) return;
  std::size_t low = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].cohesion < entries[low].cohesion) low = i;
  }
  int ties = 0;
  for (const CompareEntry &e : entries) ties += e.cohesion == entries[low].cohesion;
  if (ties == 1) entries[low].fuzzily_defined = true;
}

std::vector<CompareEntry> compare_terms(const std::vector<RunConfig> &configs) {
  if (configs.size() < 2) throw UsageError("compare needs at least two terms");
  std::vector<CompareEntry> entries;
  for (const RunConfig &c : configs) {
    validate_config(c);
    Inputs inputs = load_inputs(c);
    entries.push_back(compare_entry(c.term, run_define(c, inputs)));
  }
  flag_fuzzy(entries);
  return entries;
}

std::string compare_json(const std::vector<CompareEntry> &entries) {
  auto table = [](const std::vector<FreqEntry> &t) {
    auto arr = nlohmann::ordered_json::array();
    for (const FreqEntry &e : t) {
      nlohmann::ordered_json o;
      o["key"] = e.key;
      o["count"] = e.count;
      o["fraction"] = e.fraction;
      arr.push_back(o);
    }
    return arr;
  };
  auto arr = nlohmann::ordered_json::array();
  for (const CompareEntry &e : entries) {
    nlohmann::ordered_json o;
    o["term"] = e.term;
    o["definitions"] = e.definitions;
    o["cohesion"] = e.cohesion;
    o["genus_entropy_bits"] = e.genus_entropy;
    o["top_genera"] = table(e.top_genera);
    o["top_features"] = table(e.top_features);
    o["fuzzily_defined"] = e.fuzzily_defined;
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

std::string compare_csv(const std::vector<CompareEntry> &entries, bool decimal_comma) {
  std::string out = csv_row({"term", "definitions", "cohesion", "genus_entropy_bits",
                             "top_genera", "top_features", "fuzzily_defined"});
  auto keys = [](const std::vector<FreqEntry> &t) {
    std::vector<std::string> k;
    for (const FreqEntry &e : t) k.push_back(e.key);
    return join(k, "; ");
  };
  for (const CompareEntry &e : entries) {
    out += csv_row({e.term, std::to_string(e.definitions),
                    format_decimal(e.cohesion, 3, decimal_comma),
                    format_decimal(e.genus_entropy, 3, decimal_comma), keys(e.top_genera),
                    keys(e.top_features), e.fuzzily_defined ? "yes" : "no"});
  }
  return out;
}

}  // namespace defminer
