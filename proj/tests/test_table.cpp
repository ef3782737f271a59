// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "connred/table.hpp"
#include "doctest.h"

using namespace connred;

TEST_CASE("csv quoting follows RFC 4180") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("renderings") {
  TextTable t;
  t.header = {"name", "value"};
  t.right_align = {false, true};
  t.rows = {{"a", "1"}, {"long|name", "22"}};

  CHECK(t.render(TableFormat::kText) ==
        "name       value\n"
        "---------  -----\n"
        "a              1\n"
        "long|name     22\n");
  CHECK(t.render(TableFormat::kCsv) == "name,value\r\na,1\r\nlong|name,22\r\n");
  CHECK(t.render(TableFormat::kMarkdown) ==
        "| name | value |\n"
        "| --- | ---: |\n"
        "| a | 1 |\n"
        "| long\\|name | 22 |\n");
}

TEST_CASE("format names") {
  CHECK(parse_table_format("csv") == TableFormat::kCsv);
  CHECK(parse_table_format("md") == TableFormat::kMarkdown);
  CHECK_THROWS_AS(parse_table_format("xml"), std::invalid_argument);
}
