// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only helpers: an independent cost oracle that works from the config
// alone (no graph), a minimal DOT grammar checker, and random configs.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "connred/network.hpp"

namespace connred::testing {

/// Predecessors by filtering every m < n against the rule's membership test.
std::vector<int> brute_predecessors(ConnectionScheme scheme, int n);

struct OracleCost {
  std::int64_t params = 0;
  std::int64_t macs = 0;
  std::int64_t memory_bytes = 0;
  std::int64_t memrw_bytes = 0;
};

/// Walks the config block by block with its own channel and resolution
/// bookkeeping. Assumes stem stride 1 for spatial sizes unless stated.
OracleCost oracle_cost(const NetworkConfig& config);

/// Accepts the DOT subset a graph emitter would produce: strict?, graph or
/// digraph, optional ID, statement list of node/edge/attr statements,
/// ID=ID assignments and nested subgraphs. Returns an empty string on
/// success, otherwise a description of the first syntax error.
std::string dot_syntax_error(std::string_view text);

/// Random configs: 1-4 blocks, 1-16 layers each, k in {8, 16, 32}, any scheme.
NetworkConfig random_config(std::mt19937_64& rng, int index);

}  // namespace connred::testing
