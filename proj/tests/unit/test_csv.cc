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

#include <gtest/gtest.h>

#include <cmath>

#include "ddlab/csv.h"
#include "ddlab/error.h"

namespace {

using namespace ddlab;

TEST(Csv, QuotedFieldsAndCrlf) {
    auto rows = parse_csv("a,b,c\r\n1,\"x,y\",\"he said \"\"hi\"\"\"\r\n");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][1], "x,y");
    EXPECT_EQ(rows[1][2], "he said \"hi\"");
}

TEST(Csv, TrailingNewlineOptional) {
    EXPECT_EQ(parse_csv("a,b\n1,2").size(), 2u);
    EXPECT_EQ(parse_csv("a,b\n1,2\n").size(), 2u);
}

TEST(Csv, EmptyFieldsKept) {
    auto rows = parse_csv("a,,c\n");
    ASSERT_EQ(rows[0].size(), 3u);
    EXPECT_EQ(rows[0][1], "");
}

TEST(Csv, UnterminatedQuoteRejected) {
    EXPECT_THROW(parse_csv("a,\"b\n"), ParseError);
}

TEST(Csv, EscapeRoundTrip) {
    for (std::string s : {"plain", "with,comma", "with\"quote", "multi\nline"}) {
        auto rows = parse_csv(csv_escape(s) + "\n");
        ASSERT_EQ(rows.size(), 1u);
        EXPECT_EQ(rows[0][0], s);
    }
}

TEST(Csv, NumericFields) {
    EXPECT_DOUBLE_EQ(parse_double_field(" 1.5e-3 ", "x"), 1.5e-3);
    EXPECT_THROW(parse_double_field("abc", "x"), ParseError);
    EXPECT_THROW(parse_double_field("1.0x", "x"), ParseError);
    EXPECT_EQ(parse_int_field("42", "n"), 42);
    EXPECT_THROW(parse_int_field("4.2", "n"), ParseError);
}

TEST(Csv, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3, 6.02e23, -2.5e-300, 0.0}) {
        EXPECT_EQ(parse_double_field(format_double(v), "v"), v);
    }
}

}  // namespace
