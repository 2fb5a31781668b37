// Copyright 2026 The ddlab Authors
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

#ifndef DDLAB_CSV_H
#define DDLAB_CSV_H

#include <string>
#include <string_view>
#include <vector>

namespace ddlab {

using CsvRow = std::vector<std::string>;

/// RFC 4180 subset: comma separated, optional double-quoted fields with ""
/// escapes, LF or CRLF line ends. Blank lines are skipped. Fields are
/// returned verbatim except that unquoted fields are trimmed of spaces.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Strict decimal parse of a whole field (leading/trailing spaces allowed).
/// Throws ParseError naming `what` on failure.
double parse_double_field(std::string_view field, std::string_view what);
long long parse_int_field(std::string_view field, std::string_view what);

/// Shortest round-trip decimal representation ("%.17g" trimmed).
std::string format_double(double v);

}  // namespace ddlab

#endif
