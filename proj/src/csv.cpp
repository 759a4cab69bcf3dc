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

#include "tbsim/csv.hpp"

#include <cstdio>
#include <fstream>

#include "tbsim/version.hpp"

namespace tbsim {

void CsvWriter::comment(const std::string& line) { os_ << "# " << line << '\n'; }

void CsvWriter::metadata(const std::string& recipe, std::uint64_t config_hash,
                         std::uint64_t seed) {
    os_ << "# tbsim " << kVersion << '\n';
    os_ << "# recipe: " << recipe << '\n';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash));
    os_ << "# config-hash: " << buf << '\n';
    os_ << "# seed: " << seed << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format(values[i]);
    os_ << '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open " + path);
    CsvTable t;
    std::string line;
    size_t rownum = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        cells.push_back(cur);
        // trim
        for (auto& cell : cells) {
            size_t a = cell.find_first_not_of(" \t");
            size_t b = cell.find_last_not_of(" \t");
            cell = a == std::string::npos ? "" : cell.substr(a, b - a + 1);
        }
        return cells;
    };
    while (std::getline(f, line)) {
        ++rownum;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (t.columns.empty()) {
            // first non-comment row: header if any cell is non-numeric
            bool numeric = true;
            for (const auto& c : cells) {
                char* end = nullptr;
                std::strtod(c.c_str(), &end);
                if (end == c.c_str() || *end != '\0') numeric = false;
            }
            if (!numeric) {
                t.columns = cells;
                continue;
            }
            t.columns.assign(cells.size(), "");
        }
        if (cells.size() != t.columns.size())
            throw config_error(path + ": row " + std::to_string(rownum) +
                               " has wrong number of cells");
        t.rows.push_back(cells);
    }
    return t;
}

double parse_double_cell(const CsvTable& t, size_t row, size_t col, const std::string& path) {
    const std::string& cell = t.rows[row][col];
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        throw config_error(path + ": row " + std::to_string(row + 1) + " column " +
                           std::to_string(col + 1) + " is not a number: '" + cell + "'");
    return v;
}

}  // namespace tbsim
