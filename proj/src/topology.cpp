// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "connred/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace connred {

std::string_view to_string(ConnectionScheme scheme) {
  switch (scheme) {
    case ConnectionScheme::kDense:
      return "dense";
    case ConnectionScheme::kShort1:
      return "short1";
    case ConnectionScheme::kShort2:
      return "short2";
  }
  throw std::invalid_argument("invalid ConnectionScheme value");
}

ConnectionScheme parse_scheme(std::string_view name) {
  for (ConnectionScheme s : all_schemes()) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown connection scheme '" + std::string(name) +
                              "' (expected dense, short1 or short2)");
}

const std::vector<ConnectionScheme>& all_schemes() {
  static const std::vector<ConnectionScheme> kAll = {
      ConnectionScheme::kDense, ConnectionScheme::kShort1, ConnectionScheme::kShort2};
  return kAll;
}

namespace {

std::vector<int> dense_predecessors(int n) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n - 1));
  for (int m = 1; m < n; ++m) out.push_back(m);
  return out;
}

// Odd n: layer 1 plus every earlier even layer. Even n: every earlier odd layer.
std::vector<int> short1_predecessors(int n) {
  std::vector<int> out;
  if (n == 1) return out;
  if (n % 2 == 1) {
    out.push_back(1);
    for (int m = 2; m < n; m += 2) out.push_back(m);
  } else {
    for (int m = 1; m < n; m += 2) out.push_back(m);
  }
  return out;
}

// Odd n: only n-1. Even n: n - (2^i - 1) for i >= 1 while the offset stays below n.
std::vector<int> short2_predecessors(int n) {
  std::vector<int> out;
  if (n == 1) return out;
  if (n % 2 == 1) {
    out.push_back(n - 1);
    return out;
  }
  for (std::int64_t offset = 1; offset < n; offset = offset * 2 + 1) {
    out.push_back(n - static_cast<int>(offset));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PredecessorSet predecessors(ConnectionScheme scheme, int n) {
  if (n < 1) {
    throw std::domain_error("layer index must be >= 1, got " + std::to_string(n));
  }
  PredecessorSet result;
  result.layer = n;
  switch (scheme) {
    case ConnectionScheme::kDense:
      result.predecessors = dense_predecessors(n);
      break;
    case ConnectionScheme::kShort1:
      result.predecessors = short1_predecessors(n);
      break;
    case ConnectionScheme::kShort2:
      result.predecessors = short2_predecessors(n);
      break;
  }
  return result;
}

std::int64_t connection_count(ConnectionScheme scheme, int num_layers) {
  if (num_layers < 1) {
    throw std::domain_error("block length must be >= 1, got " + std::to_string(num_layers));
  }
  std::int64_t total = 0;
  for (int n = 1; n <= num_layers; ++n) {
    total += static_cast<std::int64_t>(predecessors(scheme, n).predecessors.size());
  }
  return total;
}

}  // namespace connred
