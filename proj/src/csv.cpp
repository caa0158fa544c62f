/*
   Copyright 2026 meantest developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "meantest/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace meantest {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

bool parse_number(std::string_view field, double& out) {
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

Matrix parse_matrix_csv(std::string_view text, const std::string& name) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    bool first_content_line = true;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (trim(raw).empty()) continue;
        const auto fields = split_fields(raw);

        if (first_content_line) {
            first_content_line = false;
            bool all_numeric = true;
            for (const auto f : fields) {
                double ignored;
                if (!parse_number(f, ignored)) {
                    all_numeric = false;
                    break;
                }
            }
            if (!all_numeric) continue;  // header row
        }

        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v;
            if (!parse_number(fields[c], v))
                throw ParseError(name + ": row " + std::to_string(line_no) + ", column " +
                                 std::to_string(c + 1) + ": '" + std::string(fields[c]) +
                                 "' is not a number");
            if (!std::isfinite(v))
                throw ParseError(name + ": row " + std::to_string(line_no) + ", column " +
                                 std::to_string(c + 1) + ": non-finite value");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(name + ": row " + std::to_string(line_no) + " has " +
                             std::to_string(row.size()) + " field(s), expected " +
                             std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw ParseError(name + ": no data rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_csv(buffer.str(), path);
}

std::vector<double> read_vector_csv(const std::string& path) {
    const Matrix m = read_matrix_csv(path);
    std::vector<double> v;
    if (m.rows() == 1) {
        v.assign(m.row(0).begin(), m.row(0).end());
    } else if (m.cols() == 1) {
        v.reserve(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m(i, 0));
    } else {
        throw ParseError(path + ": expected a single row or a single column, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    return v;
}

}  // namespace meantest
