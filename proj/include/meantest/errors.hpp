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

#include <stdexcept>
#include <string>

namespace meantest {

/// Invalid value passed to an operation (bad alpha, empty sample, ...).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Vector/matrix dimensions do not line up (e.g. mu0 length vs. columns).
struct DimensionMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// Row or column index outside the matrix.
struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Probability argument outside the open interval (0,1).
struct InvalidProbability : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// Data-generating model violates its constraints (gamma <= 1, nu < 3, ...).
struct InvalidModel : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// Iterative solver failed to reach its tolerance within the sweep budget.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV cell, plan key, JSON document).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, unreadable path).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace meantest
