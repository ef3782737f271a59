// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <cctype>
#include <stdexcept>

namespace connred::testing {

std::vector<int> brute_predecessors(ConnectionScheme scheme, int n) {
  std::vector<int> out;
  for (int m = 1; m < n; ++m) {
    bool keep = false;
    switch (scheme) {
      case ConnectionScheme::kDense:
        keep = true;
        break;
      case ConnectionScheme::kShort1:
        keep = (n % 2 == 1) ? (m == 1 || m % 2 == 0) : (m % 2 == 1);
        break;
      case ConnectionScheme::kShort2: {
        if (n % 2 == 1) {
          keep = (m == n - 1);
        } else {
          const int gap_plus_one = n - m + 1;  // offset 2^i - 1 <=> gap + 1 is a power of two
          keep = (gap_plus_one & (gap_plus_one - 1)) == 0;
        }
        break;
      }
    }
    if (keep) out.push_back(m);
  }
  return out;
}

OracleCost oracle_cost(const NetworkConfig& cfg) {
  OracleCost c;
  std::int64_t read = 0;
  std::int64_t written = 0;
  const std::int64_t kk = cfg.stem.kernel;
  std::int64_t h = (cfg.input_shape.height + 2 * (kk / 2) - kk) / cfg.stem.stride + 1;
  std::int64_t w = (cfg.input_shape.width + 2 * (kk / 2) - kk) / cfg.stem.stride + 1;
  std::int64_t ch = cfg.stem.out_channels;
  const std::int64_t cin0 = cfg.input_shape.channels;

  const std::int64_t stem_w = cin0 * ch * kk * kk;
  c.params += stem_w;
  c.macs += stem_w * h * w;
  read += cin0 * cfg.input_shape.height * cfg.input_shape.width + stem_w;
  written += ch * h * w;

  for (const auto& blk : cfg.blocks) {
    const std::int64_t k = blk.growth_rate;
    const std::int64_t area = h * w;
    for (int n = 1; n <= blk.num_layers; ++n) {
      const std::int64_t cin =
          n == 1 ? ch : k * static_cast<std::int64_t>(brute_predecessors(cfg.scheme, n).size());
      const std::int64_t wts = cin * k * 9;
      c.params += wts + 2 * cin;
      c.macs += wts * area;
      read += 3 * cin * area + 2 * cin + wts;
      written += 2 * cin * area + k * area;
    }
    const std::int64_t cin = blk.num_layers * k;
    const std::int64_t cout = cin * cfg.compression.numerator() / cfg.compression.denominator();
    c.params += cin * cout + 2 * cin;
    c.macs += cin * cout * area;
    const std::int64_t oh = h / 2;
    const std::int64_t ow = w / 2;
    read += 3 * cin * area + 2 * cin + cin * cout + cout * area;
    written += 2 * cin * area + cout * area + cout * oh * ow;
    ch = cout;
    h = oh;
    w = ow;
  }
  // global pool + classifier
  read += ch * h * w;
  written += ch;
  const std::int64_t cls = ch * cfg.num_classes + cfg.num_classes;
  c.params += cls;
  c.macs += ch * cfg.num_classes;
  read += ch + cls;
  written += cfg.num_classes;

  c.memory_bytes = written * 4;
  c.memrw_bytes = (read + written) * 4;
  return c;
}

namespace {

// Recursive-descent checker over a token stream.
class DotChecker {
 public:
  explicit DotChecker(std::string_view s) : s_(s) {}

  void graph() {
    if (keyword("strict")) {}
    if (!keyword("digraph") && !keyword("graph")) fail("expected 'graph' or 'digraph'");
    if (!peek('{')) id();
    expect('{');
    stmt_list();
    expect('}');
    skip_ws();
    if (pos_ != s_.size()) fail("trailing content");
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error(what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_.substr(pos_, 2) == "//") {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool peek_str(std::string_view t) {
    skip_ws();
    return s_.substr(pos_, t.size()) == t;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) {
      return false;
    }
    pos_ = end;
    return true;
  }

  bool at_id() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '"' || c == '_' || c == '-' || c == '.' || std::isalnum(static_cast<unsigned char>(c));
  }

  void id() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected identifier");
    if (s_[pos_] == '"') {
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\') ++pos_;
        ++pos_;
      }
      if (pos_ >= s_.size()) fail("unterminated string");
      ++pos_;
      return;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '-')) {
        ++pos_;
      }
      return;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected identifier");
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
  }

  void attr_list() {
    while (peek('[')) {
      ++pos_;
      while (!peek(']')) {
        id();
        if (peek('=')) {
          ++pos_;
          id();
        }
        if (peek(',') || peek(';')) ++pos_;
      }
      expect(']');
    }
  }

  void subgraph() {
    if (keyword("subgraph") && !peek('{')) id();
    expect('{');
    stmt_list();
    expect('}');
  }

  void stmt_list() {
    while (!peek('}')) {
      stmt();
      if (peek(';')) ++pos_;
    }
  }

  void edge_rhs() {
    while (peek_str("->") || peek_str("--")) {
      pos_ += 2;
      if (peek('{') || peek_str("subgraph")) {
        subgraph();
      } else {
        id();
      }
    }
  }

  void stmt() {
    skip_ws();
    if (keyword("graph") || keyword("node") || keyword("edge")) {
      attr_list();
      return;
    }
    if (peek('{') || peek_str("subgraph")) {
      subgraph();
      edge_rhs();
      attr_list();
      return;
    }
    if (!at_id()) fail("expected statement");
    id();
    if (peek('=')) {
      ++pos_;
      id();
      return;
    }
    edge_rhs();
    attr_list();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string dot_syntax_error(std::string_view text) {
  try {
    DotChecker(text).graph();
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return {};
}

NetworkConfig random_config(std::mt19937_64& rng, int index) {
  std::uniform_int_distribution<int> nblocks(1, 4);
  std::uniform_int_distribution<int> nlayers(1, 16);
  std::uniform_int_distribution<int> pick(0, 2);
  const int ks[] = {8, 16, 32};
  NetworkConfig cfg;
  cfg.name = "random-" + std::to_string(index);
  cfg.scheme = all_schemes()[static_cast<std::size_t>(pick(rng))];
  const int b = nblocks(rng);
  const int k = ks[pick(rng)];
  for (int i = 0; i < b; ++i) cfg.blocks.push_back({nlayers(rng), k});
  return cfg;
}

}  // namespace connred::testing
