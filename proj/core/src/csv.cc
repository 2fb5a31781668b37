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

#include "ddlab/csv.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ddlab/error.h"

namespace ddlab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    bool any = false;
    std::size_t line = 1;

    auto end_field = [&]() {
        row.push_back(was_quoted ? field : std::string(trim(field)));
        field.clear();
        was_quoted = false;
    };
    auto end_row = [&]() {
        end_field();
        bool blank = row.size() == 1 && row[0].empty();
        if (!blank) rows.push_back(std::move(row));
        row.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!trim(field).empty()) {
                    throw ParseError("CSV line " + std::to_string(line) + ": quote inside unquoted field");
                }
                field.clear();
                quoted = true;
                was_quoted = true;
                any = true;
                break;
            case ',':
                end_field();
                any = true;
                break;
            case '\n':
                end_row();
                ++line;
                break;
            case '\r':
                break;
            default:
                if (was_quoted && c != ' ' && c != '\t') {
                    throw ParseError("CSV line " + std::to_string(line) + ": text after closing quote");
                }
                if (!was_quoted) field.push_back(c);
                any = true;
        }
    }
    if (quoted) {
        throw ParseError("CSV: unterminated quoted field");
    }
    if (any || !field.empty()) {
        end_row();
    }
    return rows;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

double parse_double_field(std::string_view field, std::string_view what) {
    auto s = trim(field);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("cannot parse " + std::string(what) + " from '" + std::string(field) + "'");
    }
    return v;
}

long long parse_int_field(std::string_view field, std::string_view what) {
    auto s = trim(field);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("cannot parse integer " + std::string(what) + " from '" + std::string(field) + "'");
    }
    return v;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }
    return std::string(buf, ptr);
}

}  // namespace ddlab
