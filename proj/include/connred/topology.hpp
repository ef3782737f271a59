// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace connred {

/// Intra-block wiring rule. Enumerators are ordered so that
/// kDense > kShort1 > kShort2, the order used when reporting.
enum class ConnectionScheme : int {
  kShort2 = 0,  // offset rule: even layers reach back 2^i - 1, odd layers take only n-1
  kShort1 = 1,  // parity rule: odd layers take 1 and earlier evens, even layers take earlier odds
  kDense = 2,   // every earlier layer
};

constexpr std::strong_ordering operator<=>(ConnectionScheme a, ConnectionScheme b) {
  return static_cast<int>(a) <=> static_cast<int>(b);
}

/// Canonical lower-case name: "dense", "short1", "short2".
std::string_view to_string(ConnectionScheme scheme);

/// Inverse of to_string. Throws std::invalid_argument on unknown names.
ConnectionScheme parse_scheme(std::string_view name);

/// All schemes in reporting order (densest first).
const std::vector<ConnectionScheme>& all_schemes();

/// Layers (1-based, within one block) whose outputs are concatenated to form
/// the input of `layer`. `predecessors` is strictly ascending and every entry
/// lies in [1, layer). The block input is never listed.
struct PredecessorSet {
  int layer = 0;
  std::vector<int> predecessors;

  bool operator==(const PredecessorSet&) const = default;
};

/// Throws std::domain_error for n < 1.
PredecessorSet predecessors(ConnectionScheme scheme, int n);

/// Number of internal layer-to-layer edges in a block of `num_layers` layers,
/// i.e. the sum of |predecessors(scheme, n)| for n = 1..num_layers.
/// Throws std::domain_error for num_layers < 1.
std::int64_t connection_count(ConnectionScheme scheme, int num_layers);

}  // namespace connred
