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


#include <sstream>

#include "defminer/csv.h"
#include "defminer/errors.h"
#include "doctest.h"

using namespace defminer;

TEST_CASE("read_csv handles quotes, CRLF and embedded newlines") {
  std::istringstream in("a,b,c\r\n\"x, y\",\"say \"\"hi\"\"\",\"two\nlines\"\r\n\n1,,3\n");
  auto rows = read_csv(in);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].fields == std::vector<std::string>{"a", "b", "c"});
  CHECK(rows[1].fields == std::vector<std::string>{"x, y", "say \"hi\"", "two\nlines"});
  CHECK(rows[2].fields == std::vector<std::string>{"1", "", "3"});
  CHECK(rows[2].line == 5);
}

TEST_CASE("csv_row quotes only when needed and round-trips") {
  std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", ""};
  std::string row = csv_row(fields);
  CHECK(row == "plain,\"with,comma\",\"with \"\"quote\"\"\",\n");
  std::istringstream in(row);
  CHECK(read_csv(in).front().fields == fields);
}

TEST_CASE("format_decimal") {
  CHECK(format_decimal(1011.0 / 1551.0, 3) == "0.652");
  CHECK(format_decimal(1011.0 / 1551.0, 3, true) == "0,652");
  CHECK(format_decimal(-0.0001, 3) == "0.000");
  CHECK(format_decimal(72.214, 0) == "72");
  CHECK(format_decimal(0.5, 0) == "1");
  CHECK(format_decimal(2.5, 0) == "3");
  CHECK(format_decimal(-0.125, 2) == "-0.13");
}
