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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "meantest/linalg.hpp"

namespace meantest {

/// Parse a comma-separated numeric matrix. One observation per line; an
/// optional single header row (any row-1 cell that is not a number) is
/// skipped; blank lines are ignored. Ragged rows, non-numeric cells and
/// non-finite values raise ParseError naming the offending row/column
/// (1-based, counted over the raw file lines).
Matrix parse_matrix_csv(std::string_view text, const std::string& name);

/// parse_matrix_csv over the contents of a file; missing/unreadable files
/// raise IoError.
Matrix read_matrix_csv(const std::string& path);

/// A vector stored as a single CSV row or a single CSV column.
std::vector<double> read_vector_csv(const std::string& path);

}  // namespace meantest
