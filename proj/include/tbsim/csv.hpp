// Copyright 2026 The tbsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TBSIM_CSV_HPP
#define TBSIM_CSV_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tbsim/common.hpp"

namespace tbsim {

// Writer for CSV files with '#'-prefixed metadata headers. Formatting is
// fixed (%.12g) so repeated runs are byte-identical.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(const std::string& line);
    // standard metadata block: tool version, config hash, seed, recipe note
    void metadata(const std::string& recipe, std::uint64_t config_hash, std::uint64_t seed);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);

    static std::string format(double v);

  private:
    std::ostream& os_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // raw cells
};

// Parses a CSV file, skipping '#' comments and an optional textual header
// row. Throws config_error naming the offending row.
CsvTable read_csv(const std::string& path);

double parse_double_cell(const CsvTable& t, size_t row, size_t col, const std::string& path);

}  // namespace tbsim

#endif
