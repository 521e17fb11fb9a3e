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


#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "defminer/csv.h"
#include "defminer/pipeline.h"
#include "doctest.h"
#include "json.hpp"
#include "paths.h"

using namespace defminer;
namespace fs = std::filesystem;

namespace {

// A scratch directory removed when the test ends.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("defminer_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path &p, const std::string &text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int csv_rows(const fs::path &p) {
  std::ifstream in(p);
  return static_cast<int>(read_csv(in).size()) - 1;
}

// Runs the command-line tool; returns its exit status.
int cli(const std::string &args, const fs::path &log) {
  std::string cmd = std::string("\"") + DEFMINER_CLI_PATH + "\" " + args + " >\"" + log.string() +
                    "\" 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig golden_config(const fs::path &out, const std::string &term) {
  RunConfig c;
  c.corpus_path = paths::fixture("golden_corpus.jsonl");
  c.term = term;
  c.output_dir = out;
  apply_defaults(c);
  return c;
}

const char *const kDefineFiles[] = {
    "definitions.csv", "hyponyms.csv",    "synonyms.csv", "genera.csv",    "features.csv",
    "cooccurrence.csv", "ontology.dot",   "ontology.graphml", "network.csv", "clusters.json",
    "profile.json",    "run_manifest.json"};

}  // namespace

TEST_CASE("config files and overrides") {
  std::istringstream in(
      "# comment\n"
      "term = data science\n"
      "min_cooccurrence = 3\n"
      "decimal_comma = true\n");
  RunConfig c;
  for (const auto &[k, v] : read_config_file(in)) set_config_value(c, k, v);
  CHECK(c.term == "data science");
  CHECK(c.min_cooccurrence == 3);
  CHECK(c.decimal_comma);
  set_config_value(c, "min_cooccurrence", "5");
  CHECK(c.min_cooccurrence == 5);
  CHECK_THROWS_AS(set_config_value(c, "colour", "red"), UsageError);
  CHECK_THROWS_AS(set_config_value(c, "min_cooccurrence", "many"), UsageError);
  std::istringstream bad("no equals sign here\n");
  CHECK_THROWS_AS(read_config_file(bad), UsageError);
}

TEST_CASE("validate_config") {
  TempDir tmp;
  RunConfig c = golden_config(tmp.path, "artificial intelligence");
  CHECK_NOTHROW(validate_config(c));
  RunConfig t = c;
  t.cluster_threshold = 0;
  CHECK_THROWS_AS(validate_config(t), UsageError);
  RunConfig f = c;
  f.precision_floor = 1.5;
  CHECK_THROWS_AS(validate_config(f), UsageError);
  RunConfig m = c;
  m.rule_catalog_path = tmp.path / "missing.tsv";
  try {
    validate_config(m);
    FAIL("expected a missing catalog error");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("rule_catalog_path") != std::string::npos);
  }
}

TEST_CASE("define writes every declared output and counts agree with them") {
  TempDir tmp;
  RunConfig c = golden_config(tmp.path, "artificial intelligence");
  Inputs inputs = load_inputs(c);
  DefineResult r = run_define(c, inputs);
  auto files = define_outputs(r, c);
  files["run_manifest.json"] = run_manifest(c, inputs, r, "2026-01-01T00:00:00Z");
  write_outputs_atomically(tmp.path, files);
  for (const char *f : kDefineFiles) CHECK_MESSAGE(fs::exists(tmp.path / f), f);

  auto manifest = nlohmann::json::parse(slurp(tmp.path / "run_manifest.json"));
  const auto &counts = manifest["counts"];
  CHECK(counts["definitions"] == csv_rows(tmp.path / "definitions.csv"));
  CHECK(counts["hyponyms"] == csv_rows(tmp.path / "hyponyms.csv"));
  CHECK(counts["synonyms"] == csv_rows(tmp.path / "synonyms.csv"));
  CHECK(counts["genera"] == csv_rows(tmp.path / "genera.csv"));
  CHECK(counts["features"] == csv_rows(tmp.path / "features.csv"));
  CHECK(counts["cooccurrence"] == csv_rows(tmp.path / "cooccurrence.csv"));
  CHECK(counts["network_edges"] == csv_rows(tmp.path / "network.csv"));
  auto clusters = nlohmann::json::parse(slurp(tmp.path / "clusters.json"));
  CHECK(counts["clusters"] == clusters["components"].size());
  std::string dot = slurp(tmp.path / "ontology.dot");
  int arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++arrows;
  CHECK(counts["ontology_edges"] == arrows);
  CHECK(manifest["catalog_sha256"] == inputs.catalog_sha256);
  CHECK(inputs.catalog_sha256.size() == 64);
  CHECK(counts["definitions"] == 5);
  CHECK(counts["hyponyms"] == 22);
}

TEST_CASE("definitions.csv rows carry the published genera") {
  TempDir tmp;
  RunConfig c = golden_config(tmp.path, "artificial intelligence");
  auto files = define_outputs(run_define(c, load_inputs(c)), c);
  std::istringstream in(files.at("definitions.csv"));
  auto rows = read_csv(in);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].fields[4] == "genus");
  CHECK(rows[2].fields[4] == "ability of a computer");
  CHECK(rows[2].fields[5] == "perform; function; reason; typical; human mind");
}

TEST_CASE("identical runs give byte-identical outputs") {
  TempDir tmp;
  RunConfig c = golden_config(tmp.path, "data science");
  Inputs inputs = load_inputs(c);
  auto a = define_outputs(run_define(c, inputs), c);
  auto b = define_outputs(run_define(c, load_inputs(c)), c);
  CHECK(a == b);
  DefineResult r = run_define(c, inputs);
  auto strip = [](std::string m) {
    auto j = nlohmann::ordered_json::parse(m);
    j.erase("timestamp");
    return j.dump();
  };
  CHECK(strip(run_manifest(c, inputs, r, "t1")) == strip(run_manifest(c, inputs, r, "t2")));
}

TEST_CASE("term absent from the corpus gives empty-bodied outputs") {
  TempDir tmp;
  RunConfig c = golden_config(tmp.path, "quantum computing");
  auto files = define_outputs(run_define(c, load_inputs(c)), c);
  CHECK(files.size() == 11);
  for (const char *f : {"definitions.csv", "hyponyms.csv", "synonyms.csv", "genera.csv",
                        "features.csv", "cooccurrence.csv", "network.csv"}) {
    std::istringstream in(files.at(f));
    CHECK_MESSAGE(read_csv(in).size() == 1, f);
  }
}

TEST_CASE("atomic writes leave nothing behind on failure") {
  TempDir tmp;
  fs::path out = tmp.path / "out";
  fs::create_directories(out);
  spit(out / "keep.txt", "old");
  // The target lies under a regular file, so staging fails.
  std::map<std::string, std::string> files{{"a.csv", "x"}, {"b.csv", "y"}};
  CHECK_THROWS(write_outputs_atomically(out / "keep.txt" / "nested", files));
  CHECK(slurp(out / "keep.txt") == "old");
  std::size_t entries = 0;
  for (auto it = fs::directory_iterator(out); it != fs::directory_iterator(); ++it) ++entries;
  CHECK(entries == 1);

  write_outputs_atomically(out, files);
  CHECK(slurp(out / "a.csv") == "x");
  entries = 0;
  for (auto it = fs::directory_iterator(out); it != fs::directory_iterator(); ++it) ++entries;
  CHECK(entries == 3);
}

TEST_CASE("compare flags the less cohesive term") {
  std::vector<CompareEntry> entries(2);
  entries[0].term = "data science";
  entries[0].cohesion = 1.0;
  entries[1].term = "artificial intelligence";
  entries[1].cohesion = 0.4;
  flag_fuzzy(entries);
  CHECK_FALSE(entries[0].fuzzily_defined);
  CHECK(entries[1].fuzzily_defined);
  std::vector<CompareEntry> tie(2);
  tie[0].cohesion = tie[1].cohesion = 0.5;
  flag_fuzzy(tie);
  CHECK_FALSE(tie[0].fuzzily_defined);
  CHECK_FALSE(tie[1].fuzzily_defined);

  TempDir tmp;
  RunConfig one = golden_config(tmp.path, "data science");
  CHECK_THROWS_AS(compare_terms({one}), UsageError);
  auto same = compare_terms({one, one});
  CHECK(compare_json({same[0]}) == compare_json({same[1]}));
  CHECK_FALSE(same[0].fuzzily_defined);
}

TEST_CASE("cli: define, exit codes and flag precedence") {
  TempDir tmp;
  const std::string corpus = paths::fixture("golden_corpus.jsonl").string();
  const fs::path log = tmp.path / "log.txt";

  fs::path out = tmp.path / "ai";
  CHECK(cli("define --corpus \"" + corpus + "\" --term \"artificial intelligence\" -o \"" +
                out.string() + "\"",
            log) == 0);
  for (const char *f : kDefineFiles) CHECK_MESSAGE(fs::exists(out / f), f);

  fs::path none = tmp.path / "none";
  CHECK(cli("define --corpus \"" + corpus + "\" --term \"quantum computing\" -o \"" +
                none.string() + "\"",
            log) == 0);
  CHECK(csv_rows(none / "definitions.csv") == 0);

  fs::path bad = tmp.path / "bad";
  CHECK(cli("define --corpus \"" + corpus + "\" --term ai --catalog /nonexistent/catalog.tsv -o \"" +
                bad.string() + "\"",
            log) == 2);
  CHECK(slurp(log).find("rule_catalog_path") != std::string::npos);
  CHECK_FALSE(fs::exists(bad / "definitions.csv"));

  CHECK(cli("define --no-such-flag", log) == 1);
  CHECK(cli("define --corpus \"" + corpus + "\" --term ai --cluster-threshold 0", log) == 1);

  // Config value is overridden by the flag.
  fs::path cfg = tmp.path / "run.conf";
  spit(cfg, "corpus_path = " + corpus + "\nterm = data science\nmin_cooccurrence = 1\n");
  fs::path via_cfg = tmp.path / "cfg";
  CHECK(cli("define --config \"" + cfg.string() + "\" -o \"" + via_cfg.string() + "\"", log) == 0);
  CHECK(csv_rows(via_cfg / "cooccurrence.csv") > 0);
  fs::path flagged = tmp.path / "flag";
  CHECK(cli("define --config \"" + cfg.string() + "\" --min-cooccurrence 100 -o \"" +
                flagged.string() + "\"",
            log) == 0);
  CHECK(csv_rows(flagged / "cooccurrence.csv") == 0);
  CHECK(slurp(flagged / "definitions.csv") == slurp(via_cfg / "definitions.csv"));

  // Two runs, identical bytes.
  fs::path again = tmp.path / "ai2";
  CHECK(cli("define --corpus \"" + corpus + "\" --term \"artificial intelligence\" -o \"" +
                again.string() + "\"",
            log) == 0);
  for (const char *f : kDefineFiles) {
    if (std::string(f) == "run_manifest.json") continue;
    CHECK_MESSAGE(slurp(out / f) == slurp(again / f), f);
  }
}

TEST_CASE("cli: eval on aggregate counts") {
  TempDir tmp;
  const fs::path log = tmp.path / "log.txt";
  const fs::path report = tmp.path / "report.csv";
  CHECK(cli("eval --counts \"" + paths::fixture("validation_counts.csv").string() + "\" --out \"" +
                report.string() + "\" --decimal-comma",
            log) == 0);
  std::string text = slurp(report);
  CHECK(text.find("MEAN,,72,\"0,652\",,8,\"0,973\",,80,\"0,673\"") != std::string::npos);
  CHECK(slurp(log).find("def-be+def-refer-to") != std::string::npos);
}

TEST_CASE("cli: compare and induce") {
  TempDir tmp;
  const fs::path log = tmp.path / "log.txt";
  const std::string corpus = paths::fixture("golden_corpus.jsonl").string();
  fs::path out = tmp.path / "cmp";
  CHECK(cli("compare --corpus \"" + corpus +
                "\" --compare-term \"data science\" --compare-term \"artificial intelligence\" "
                "--cluster-threshold 2 -o \"" + out.string() + "\"",
            log) == 0);
  auto j = nlohmann::json::parse(slurp(out / "compare.json"));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["term"] == "data science");
  CHECK(j[0]["cohesion"] > j[1]["cohesion"]);
  CHECK(j[1]["fuzzily_defined"] == true);
  CHECK(fs::exists(out / "compare.csv"));
  CHECK(cli("compare --corpus \"" + corpus + "\" --compare-term \"data science\"", log) == 1);

  fs::path defs = tmp.path / "defs.csv";
  spit(defs, "term,sentence\nblockchain,Blockchain is a ledger.\n");
  CHECK(cli("induce --definitions \"" + defs.string() + "\" -o \"" + tmp.path.string() + "\"",
            log) == 0);
  CHECK(slurp(log).find("600") != std::string::npos);
}
