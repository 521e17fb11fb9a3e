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


// defminer: mine genus-differentia definitions and hyponymy relations of a
// technological term from a corpus of abstracts.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "defminer/csv.h"
#include "defminer/errors.h"
#include "defminer/pipeline.h"

namespace fs = std::filesystem;
using namespace defminer;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Options shared by every subcommand. Values given on the command line
// override the config file.
struct CommonOptions {
  std::string config_file;
  std::map<std::string, std::string> flags;
  std::vector<std::pair<std::string, CLI::Option *>> options;  // one set per subcommand
  bool decimal_comma = false;
  std::vector<CLI::Option *> decimal_comma_opts;

  void attach(CLI::App *app) {
    app->add_option("--config", config_file, "key = value config file")
        ->check(CLI::ExistingFile);
    add(app, "--corpus", "corpus_path", "corpus of abstracts (.jsonl or .csv)");
    add(app, "--corpus-format", "corpus_format", "jsonl or csv (default: from extension)");
    add(app, "--conllu", "conllu_path", "pre-tagged CoNLL-U sentences for the corpus");
    add(app, "--term", "term", "target term");
    add(app, "--catalog", "rule_catalog_path", "rule catalog TSV");
    add(app, "--stopwords", "stopword_path", "stopword list");
    add(app, "--lexicon", "lexicon_path", "lexicon for the heuristic tagger");
    add(app, "-o,--output-dir", "output_dir", "output directory");
    add(app, "--min-cooccurrence", "min_cooccurrence", "minimum pair count (default 2)");
    add(app, "--network-min-weight", "network_min_weight", "minimum shared words (default 1)");
    add(app, "--cluster-threshold", "cluster_threshold", "edge weight for clustering (default 1)");
    add(app, "--precision-floor", "precision_floor", "rule selection floor (default 0.65)");
    decimal_comma_opts.push_back(
        app->add_flag("--decimal-comma", decimal_comma, "write 0,652 instead of 0.652"));
  }

  void add(CLI::App *app, const std::string &name, const std::string &key,
           const std::string &help) {
    options.emplace_back(key, app->add_option(name, flags[key], help));
  }

  RunConfig resolve() const {
    RunConfig config;
    if (!config_file.empty()) {
      for (const auto &[k, v] : load_config_file(config_file)) set_config_value(config, k, v);
    }
    for (const auto &[key, opt] : options) {
      if (opt->count() > 0) set_config_value(config, key, flags.at(key));
    }
    for (CLI::Option *opt : decimal_comma_opts) {
      if (opt->count() > 0) config.decimal_comma = decimal_comma;
    }
    apply_defaults(config);
    return config;
  }
};

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path &path, const std::string &body) {
  if (path == "-") {
    std::cout << body;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out.flush()) throw DataError("cannot write " + path.string());
}

DefineResult prepare(const RunConfig &config, Inputs &inputs) {
  validate_config(config);
  inputs = load_inputs(config);
  return run_define(config, inputs);
}

int cmd_ingest(const RunConfig &config, const std::string &out) {
  validate_config(config, true, false);
  Inputs inputs = load_inputs(config);
  fs::path target = out.empty() ? config.output_dir / "sentences.conllu" : fs::path(out);
  write_file(target, write_conllu(inputs.corpus.sentences));
  std::cerr << "documents: " << inputs.corpus.documents.size()
            << "  sentences: " << inputs.corpus.sentences.size() << "\n";
  return 0;
}

int cmd_define(const RunConfig &config) {
  Inputs inputs;
  DefineResult result = prepare(config, inputs);
  auto files = define_outputs(result, config);
  files["run_manifest.json"] = run_manifest(config, inputs, result, utc_timestamp());
  run_stage("write outputs", [&] { write_outputs_atomically(config.output_dir, files); });
  std::cerr << "definitions: " << result.definitions.size()
            << "  hyponyms: " << result.hyponyms.size()
            << "  synonyms: " << result.synonyms.size() << "\n";
  return 0;
}

int cmd_subset(const RunConfig &config, const std::vector<std::string> &names) {
  Inputs inputs;
  DefineResult result = prepare(config, inputs);
  auto all = define_outputs(result, config);
  std::map<std::string, std::string> files;
  for (const std::string &n : names) files[n] = all.at(n);
  run_stage("write outputs", [&] { write_outputs_atomically(config.output_dir, files); });
  return 0;
}

int cmd_eval(const RunConfig &config, const std::string &gold_path,
             const std::vector<std::string> &rule_sets,
             const std::vector<std::string> &observations, const std::string &counts_path,
             bool exclusive, const std::string &out) {
  validate_config(config, counts_path.empty(), false);
  std::vector<RuleSetSpec> specs;
  for (const std::string &text : rule_sets) specs.push_back(parse_rule_set(text));

  std::vector<EvaluationSummary> summaries;
  if (!counts_path.empty()) {
    summaries = run_stage("eval", [&] { return load_count_table(counts_path); });
    for (const EvaluationSummary &s : summaries) {
      bool known = false;
      for (const RuleSetSpec &spec : specs) known |= spec.id == s.rule_set_id;
      if (!known) {
        std::set<std::string> ids;
        std::istringstream parts(s.rule_set_id);
        std::string part;
        while (std::getline(parts, part, '+')) ids.insert(part);
        specs.push_back({s.rule_set_id, ids});
      }
    }
  } else {
    if (gold_path.empty()) throw UsageError("eval needs --gold or --counts");
    if (specs.empty()) throw UsageError("eval needs at least one --rule-set");
    std::vector<std::string> terms = observations;
    if (terms.empty()) terms.push_back(config.term);
    if (normalize_text(terms.front()).empty()) throw UsageError("eval needs --observation");
    Inputs inputs = load_inputs(config);
    GoldSet gold = run_stage("load gold", [&] { return GoldSet::load(gold_path); });
    for (const RuleSetSpec &spec : specs) {
      summaries.push_back(run_stage("eval", [&] {
        return evaluate_rule_set(spec, terms, inputs.corpus, inputs.catalog, inputs.stopwords,
                                 gold);
      }));
    }
  }

  std::string report = evaluation_report_csv(summaries, config.decimal_comma);
  write_file(out.empty() ? config.output_dir / "evaluation.csv" : fs::path(out), report);
  if (out != "-") std::cout << report;

  std::vector<Candidate> candidates;
  for (const EvaluationSummary &s : summaries) {
    for (const RuleSetSpec &spec : specs) {
      if (spec.id == s.rule_set_id) candidates.push_back({spec, s});
    }
  }
  Selection sel = rank_and_select(candidates, config.precision_floor, exclusive);
  for (const std::string &d : sel.diagnostics) std::cerr << "note: " << d << "\n";
  std::cout << "selected: " << sel.selected.value_or("(none)") << "\n";
  return 0;
}

int cmd_compare(const CommonOptions &common, const std::vector<std::string> &config_files,
                const std::vector<std::string> &terms) {
  std::vector<RunConfig> configs;
  RunConfig base = common.resolve();
  for (const std::string &file : config_files) {
    RunConfig c;
    for (const auto &[k, v] : load_config_file(file)) set_config_value(c, k, v);
    apply_defaults(c);
    configs.push_back(c);
  }
  for (const std::string &t : terms) {
    RunConfig c = base;
    c.term = t;
    configs.push_back(c);
  }
  std::vector<CompareEntry> entries = compare_terms(configs);
  std::map<std::string, std::string> files{
      {"compare.json", compare_json(entries)},
      {"compare.csv", compare_csv(entries, base.decimal_comma)}};
  run_stage("write outputs", [&] { write_outputs_atomically(base.output_dir, files); });
  std::cout << files["compare.csv"];
  return 0;
}

int cmd_induce(const RunConfig &config, const std::string &definitions,
               const std::string &out) {
  std::ifstream in(definitions);
  if (!in) throw DataError("cannot open definitions file " + definitions);
  std::vector<InductionEntry> entries = read_induction_entries(in);
  if (entries.empty()) throw DataError("definitions file has no entries");
  Lexicon lexicon = Lexicon::load(config.lexicon_path);
  InductionReport report = induce_rule_statistics(entries, lexicon);
  for (const std::string &w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (report.skipped > 0) {
    std::cerr << "skipped " << report.skipped << " sentence(s) without the term\n";
  }
  write_file(out.empty() ? "-" : out, induction_report_csv(report));
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Mine definitions and hyponymy relations of a technological term."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions common;
  auto sub = [&](const char *name, const char *help) {
    CLI::App *s = app.add_subcommand(name, help);
    common.attach(s);
    return s;
  };

  std::string out, gold, counts, definitions;
  std::vector<std::string> rule_sets, observations, config_files, terms;
  bool exclusive = false;

  CLI::App *ingest = sub("ingest", "segment and tag a corpus, write CoNLL-U");
  ingest->add_option("--out", out, "output file ('-' for stdout)");
  CLI::App *define = sub("define", "run the full pipeline and write every output");
  CLI::App *hyponyms = sub("hyponyms", "extract hyponym pairs and acronym synonyms");
  CLI::App *stats = sub("stats", "genus/feature distributions, co-occurrence, profile");
  CLI::App *ontology = sub("ontology", "build the ontology graph");
  CLI::App *network = sub("network", "build and cluster the definition network");
  CLI::App *eval = sub("eval", "evaluate rule sets against gold labels");
  eval->add_option("--gold", gold, "gold labels CSV (doc_id,fingerprint,relevant)");
  eval->add_option("--rule-set", rule_sets, "rule set 'id=rule,rule' (repeatable)");
  eval->add_option("--observation", observations, "observation term (repeatable)");
  eval->add_option("--counts", counts, "aggregate counts CSV instead of a corpus");
  eval->add_flag("--exclusive", exclusive, "candidates are mutually exclusive");
  eval->add_option("--out", out, "report path ('-' for stdout only)");
  CLI::App *compare = sub("compare", "compare the definitional convergence of terms");
  compare->add_option("--term-config", config_files, "config file for one term (repeatable)");
  compare->add_option("--compare-term", terms, "term over the shared corpus (repeatable)");
  CLI::App *induce = sub("induce", "tally definitors and genus patterns of known definitions");
  induce->add_option("--definitions", definitions, "CSV with columns term,sentence")
      ->required();
  induce->add_option("--out", out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*compare) return cmd_compare(common, config_files, terms);
    RunConfig config = common.resolve();
    if (*ingest) return cmd_ingest(config, out);
    if (*define) return cmd_define(config);
    if (*hyponyms) return cmd_subset(config, {"hyponyms.csv", "synonyms.csv"});
    if (*stats) {
      return cmd_subset(config, {"genera.csv", "features.csv", "cooccurrence.csv",
                                 "profile.json"});
    }
    if (*ontology) return cmd_subset(config, {"ontology.dot", "ontology.graphml"});
    if (*network) return cmd_subset(config, {"network.csv", "clusters.json"});
    if (*eval) return cmd_eval(config, gold, rule_sets, observations, counts, exclusive, out);
    if (*induce) return cmd_induce(config, definitions, out);
  } catch (const UsageError &e) {
    std::cerr << "defminer: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError &e) {
    std::cerr << "defminer: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "defminer: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
