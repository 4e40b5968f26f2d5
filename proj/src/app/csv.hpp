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
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qnl::app {

using Cell = std::variant<double, long long, std::string>;

/// Comma-separated table with a header row; LF line endings, shortest
/// round-trip decimal for doubles.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    void write(std::ostream &os) const;
    void write(const std::filesystem::path &path) const;
    std::string str() const;
};

/// Shortest decimal that round-trips to the same double.
std::string full_precision(double v);
/// Six significant digits.
std::string human(double v);

} // namespace qnl::app
