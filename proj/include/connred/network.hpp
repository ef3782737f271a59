// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "connred/errors.hpp"
#include "connred/topology.hpp"

namespace connred {

struct Shape {
  int channels = 0;
  int height = 0;
  int width = 0;

  bool operator==(const Shape&) const = default;
};

/// First convolution. Kernel padding is kernel/2, so stride 1 keeps H x W.
struct StemSpec {
  int kernel = 7;
  int stride = 1;
  int out_channels = 64;

  bool operator==(const StemSpec&) const = default;
};

struct BlockConfig {
  int num_layers = 0;
  int growth_rate = 0;  // channels produced by every conv in the block

  bool operator==(const BlockConfig&) const = default;
};

/// Transition compression factor kept as an exact fraction in (0, 1].
class Compression {
 public:
  Compression() = default;
  /// Reduces the fraction. Throws ConfigError unless 0 < num/den <= 1.
  Compression(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(theta * channels)
  std::int64_t apply(std::int64_t channels) const noexcept { return channels * num_ / den_; }

  bool operator==(const Compression&) const = default;

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 2;
};

struct NetworkConfig {
  std::string name;
  StemSpec stem;
  std::vector<BlockConfig> blocks;
  ConnectionScheme scheme = ConnectionScheme::kDense;
  Compression compression;
  int num_classes = 10;
  Shape input_shape{3, 32, 32};

  /// Throws ConfigError describing the first problem found.
  void check() const;

  bool operator==(const NetworkConfig&) const = default;
};

/// Uniform-growth config helper.
NetworkConfig make_config(std::string name, ConnectionScheme scheme,
                          const std::vector<int>& layers_per_block, int growth_rate = 32);

/// baseline-43, baseline-53, shortnet1-43, shortnet1-53, shortnet2-43, shortnet2-53.
const std::vector<std::string>& preset_names();
bool is_preset(std::string_view name);
/// Throws ConfigError naming the available presets when `name` is unknown.
NetworkConfig preset(std::string_view name);

enum class NodeRole { kStem, kConv, kTransition, kGlobalPool, kClassifier };

/// "stem", "conv", "transition", "global_pool", "classifier".
std::string_view to_string(NodeRole role);
NodeRole parse_role(std::string_view name);

/// A graph node. CONV nodes stand for the BN + ReLU + 3x3 conv composite,
/// TRANSITION nodes for BN + ReLU + 1x1 conv + 2x2 average pool.
/// out_height/out_width are 0 until shapes are propagated.
struct Node {
  std::string id;
  NodeRole role = NodeRole::kConv;
  std::optional<int> block;  // 1-based; set for CONV and TRANSITION
  std::optional<int> layer;  // 1-based within the block; CONV only
  int in_channels = 0;
  int out_channels = 0;
  int out_height = 0;
  int out_width = 0;

  bool annotated() const noexcept { return out_height > 0 && out_width > 0; }
  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string src;
  std::string dst;

  bool operator==(const Edge&) const = default;
};

/// Assembled DAG. Nodes are stored in topological order; edges are grouped by
/// destination in node order, sources ascending.
struct NetworkGraph {
  NetworkConfig config;
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  /// nullptr if absent.
  const Node* find(std::string_view id) const;
  /// Sources of edges ending at `id`, in edge order.
  std::vector<const Node*> inputs_of(std::string_view id) const;
  bool annotated() const;

  bool operator==(const NetworkGraph&) const = default;
};

std::string conv_id(int block, int layer);
std::string transition_id(int block);
inline constexpr std::string_view kStemId = "stem";
inline constexpr std::string_view kGlobalPoolId = "gap";
inline constexpr std::string_view kClassifierId = "cls";

/// Builds the channel-annotated DAG (no spatial shapes). Throws ConfigError.
NetworkGraph build_network(const NetworkConfig& config);

/// Returns a copy with out_height/out_width filled in for every node and the
/// config's input shape replaced by `input_shape`. Throws ShapeError when a
/// feature map collapses to zero or predecessors disagree on resolution.
NetworkGraph propagate_shapes(const NetworkGraph& graph, const Shape& input_shape);

/// build_network followed by propagate_shapes at config.input_shape.
NetworkGraph build_annotated(const NetworkConfig& config);

/// Empty iff every structural invariant holds.
std::vector<Violation> validate(const NetworkGraph& graph);

}  // namespace connred
