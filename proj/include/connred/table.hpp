// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace connred {

enum class TableFormat { kText, kCsv, kMarkdown };

/// "text", "csv", "markdown" (also "md").
TableFormat parse_table_format(std::string_view name);

/// Small row/column table with three renderings:
///  - text: space-padded columns, header underlined with '-'
///  - csv: RFC 4180, CRLF line breaks, fields quoted only when needed
///  - markdown: pipe table
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> right_align;  // per column; missing entries mean left aligned

  std::string render(TableFormat format) const;
};

std::string csv_escape(std::string_view field);

}  // namespace connred
