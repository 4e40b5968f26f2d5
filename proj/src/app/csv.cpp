// Copyright 2026 The qnl Authors
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
#include "app/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace qnl::app {

std::string full_precision(double v) { return fmt::format("{}", v); }

std::string human(double v) { return fmt::format("{:.6g}", v); }

namespace {

std::string quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) return full_precision(*d);
    if (const auto *i = std::get_if<long long>(&c)) return std::to_string(*i);
    return quote(std::get<std::string>(c));
}

} // namespace

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != header.size())
        throw std::logic_error(fmt::format("CSV row has {} cells, header has {}", row.size(),
                                           header.size()));
    rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream &os) const {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << quote(header[i]);
    os << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render(row[i]);
        os << '\n';
    }
}

void CsvTable::write(const std::filesystem::path &path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write(f);
}

std::string CsvTable::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

} // namespace qnl::app
