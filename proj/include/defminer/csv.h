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

#ifndef DEFMINER_CSV_H_
#define DEFMINER_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace defminer {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // line where the record starts
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Accepts CRLF. Blank lines are skipped.
std::vector<CsvRecord> read_csv(std::istream &in);

std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string> &fields);

// Fixed-point rendering used by every CSV writer, e.g. 0.652 or 0,652.
std::string format_decimal(double value, int digits, bool decimal_comma = false);

}  // namespace defminer

#endif  // DEFMINER_CSV_H_
