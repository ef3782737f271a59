// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "connred/table.hpp"

#include <algorithm>
#include <stdexcept>

namespace connred {

TableFormat parse_table_format(std::string_view name) {
  if (name == "text") return TableFormat::kText;
  if (name == "csv") return TableFormat::kCsv;
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected text, csv or markdown)");
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string markdown_escape(std::string_view cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

bool right_aligned(const TextTable& t, std::size_t col) {
  return col < t.right_align.size() && t.right_align[col];
}

std::string pad(std::string_view s, std::size_t width, bool right) {
  std::string fill(width > s.size() ? width - s.size() : 0, ' ');
  return right ? fill + std::string(s) : std::string(s) + fill;
}

std::string render_text(const TextTable& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  };
  widen(t.header);
  for (const auto& r : t.rows) widen(r);

  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    std::string l;
    for (std::size_t c = 0; c < width.size(); ++c) {
      if (c) l += "  ";
      l += pad(c < row.size() ? row[c] : "", width[c], right_aligned(t, c));
    }
    while (!l.empty() && l.back() == ' ') l.pop_back();
    out += l + "\n";
  };
  line(t.header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string render_csv(const TextTable& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(row[c]);
    }
    out += "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string render_markdown(const TextTable& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& row) {
    out += "|";
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      out += " " + markdown_escape(c < row.size() ? row[c] : "") + " |";
    }
    out += "\n";
  };
  line(t.header);
  out += "|";
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    out += right_aligned(t, c) ? " ---: |" : " --- |";
  }
  out += "\n";
  for (const auto& r : t.rows) line(r);
  return out;
}

}  // namespace

std::string TextTable::render(TableFormat format) const {
  switch (format) {
    case TableFormat::kText:
      return render_text(*this);
    case TableFormat::kCsv:
      return render_csv(*this);
    case TableFormat::kMarkdown:
      return render_markdown(*this);
  }
  throw std::invalid_argument("invalid TableFormat value");
}

}  // namespace connred
