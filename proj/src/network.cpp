// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "connred/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace connred {

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error([&] {
        std::string msg = "graph validation failed";
        for (const auto& v : violations) msg += "\n  " + v.message;
        return msg;
      }()),
      violations_(std::move(violations)) {}

Compression::Compression(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator <= 0 || numerator > denominator) {
    throw ConfigError("compression must lie in (0, 1], got " + std::to_string(numerator) + "/" +
                      std::to_string(denominator));
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

void NetworkConfig::check() const {
  if (blocks.empty()) throw ConfigError("config '" + name + "' has no blocks");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].num_layers < 1 || blocks[i].growth_rate < 1) {
      throw ConfigError("block " + std::to_string(i + 1) +
                        " needs num_layers >= 1 and growth_rate >= 1");
    }
  }
  if (stem.kernel < 1) throw ConfigError("stem kernel must be positive");
  if (stem.stride != 1 && stem.stride != 2) throw ConfigError("stem stride must be 1 or 2");
  if (stem.out_channels < 1) throw ConfigError("stem out_channels must be positive");
  if (num_classes < 1) throw ConfigError("num_classes must be positive");
  if (input_shape.channels < 1 || input_shape.height < 1 || input_shape.width < 1) {
    throw ConfigError("input shape must be positive in every dimension");
  }
  // Re-run the fraction check in case the object was default constructed and mutated.
  (void)Compression(compression.numerator(), compression.denominator());
}

NetworkConfig make_config(std::string name, ConnectionScheme scheme,
                          const std::vector<int>& layers_per_block, int growth_rate) {
  NetworkConfig cfg;
  cfg.name = std::move(name);
  cfg.scheme = scheme;
  for (int n : layers_per_block) cfg.blocks.push_back({n, growth_rate});
  return cfg;
}

namespace {

struct PresetEntry {
  std::string_view name;
  ConnectionScheme scheme;
  std::vector<int> blocks;
};

const std::vector<PresetEntry>& preset_table() {
  static const std::vector<PresetEntry> kTable = {
      {"baseline-43", ConnectionScheme::kDense, {8, 10, 12, 8}},
      {"baseline-53", ConnectionScheme::kDense, {8, 12, 16, 8}},
      {"shortnet1-43", ConnectionScheme::kShort1, {8, 10, 12, 8}},
      {"shortnet1-53", ConnectionScheme::kShort1, {8, 12, 16, 8}},
      {"shortnet2-43", ConnectionScheme::kShort2, {8, 10, 12, 8}},
      {"shortnet2-53", ConnectionScheme::kShort2, {8, 12, 16, 8}},
  };
  return kTable;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> out;
    for (const auto& e : preset_table()) out.emplace_back(e.name);
    return out;
  }();
  return kNames;
}

bool is_preset(std::string_view name) {
  return std::any_of(preset_table().begin(), preset_table().end(),
                     [&](const PresetEntry& e) { return e.name == name; });
}

NetworkConfig preset(std::string_view name) {
  for (const auto& e : preset_table()) {
    if (e.name == name) return make_config(std::string(e.name), e.scheme, e.blocks);
  }
  std::string avail;
  for (const auto& n : preset_names()) avail += (avail.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + std::string(name) + "'; available: " + avail);
}

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::kStem:
      return "stem";
    case NodeRole::kConv:
      return "conv";
    case NodeRole::kTransition:
      return "transition";
    case NodeRole::kGlobalPool:
      return "global_pool";
    case NodeRole::kClassifier:
      return "classifier";
  }
  throw std::invalid_argument("invalid NodeRole value");
}

NodeRole parse_role(std::string_view name) {
  for (NodeRole r : {NodeRole::kStem, NodeRole::kConv, NodeRole::kTransition,
                     NodeRole::kGlobalPool, NodeRole::kClassifier}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown node role '" + std::string(name) + "'");
}

const Node* NetworkGraph::find(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<const Node*> NetworkGraph::inputs_of(std::string_view id) const {
  std::vector<const Node*> out;
  for (const auto& e : edges) {
    if (e.dst == id) {
      if (const Node* n = find(e.src)) out.push_back(n);
    }
  }
  return out;
}

bool NetworkGraph::annotated() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.annotated(); });
}

std::string conv_id(int block, int layer) {
  return "b" + std::to_string(block) + ".l" + std::to_string(layer);
}

std::string transition_id(int block) { return "t" + std::to_string(block); }

NetworkGraph build_network(const NetworkConfig& config) {
  config.check();
  NetworkGraph g;
  g.config = config;

  g.nodes.push_back({std::string(kStemId), NodeRole::kStem, std::nullopt, std::nullopt,
                     config.input_shape.channels, config.stem.out_channels, 0, 0});
  std::string block_input = std::string(kStemId);
  int block_input_channels = config.stem.out_channels;

  for (int b = 1; b <= static_cast<int>(config.blocks.size()); ++b) {
    const BlockConfig& blk = config.blocks[static_cast<std::size_t>(b - 1)];
    const int k = blk.growth_rate;
    for (int n = 1; n <= blk.num_layers; ++n) {
      const auto preds = predecessors(config.scheme, n).predecessors;
      Node node{conv_id(b, n), NodeRole::kConv, b, n, 0, k, 0, 0};
      if (n == 1) {
        node.in_channels = block_input_channels;
        g.edges.push_back({block_input, node.id});
      } else {
        node.in_channels = static_cast<int>(preds.size()) * k;
        for (int p : preds) g.edges.push_back({conv_id(b, p), node.id});
      }
      g.nodes.push_back(std::move(node));
    }
    const std::int64_t concat = static_cast<std::int64_t>(blk.num_layers) * k;
    const std::int64_t compressed = config.compression.apply(concat);
    if (compressed < 1) {
      throw ConfigError("transition " + std::to_string(b) + " compresses " +
                        std::to_string(concat) + " channels to zero");
    }
    Node t{transition_id(b), NodeRole::kTransition, b, std::nullopt,
           static_cast<int>(concat), static_cast<int>(compressed), 0, 0};
    for (int n = 1; n <= blk.num_layers; ++n) g.edges.push_back({conv_id(b, n), t.id});
    block_input = t.id;
    block_input_channels = t.out_channels;
    g.nodes.push_back(std::move(t));
  }

  g.nodes.push_back({std::string(kGlobalPoolId), NodeRole::kGlobalPool, std::nullopt,
                     std::nullopt, block_input_channels, block_input_channels, 0, 0});
  g.edges.push_back({block_input, std::string(kGlobalPoolId)});
  g.nodes.push_back({std::string(kClassifierId), NodeRole::kClassifier, std::nullopt,
                     std::nullopt, block_input_channels, config.num_classes, 0, 0});
  g.edges.push_back({std::string(kGlobalPoolId), std::string(kClassifierId)});
  return g;
}

namespace {

// Kahn's algorithm over node indices; returns the order or nullopt on a cycle.
// Unknown edge endpoints are ignored.
std::optional<std::vector<std::size_t>> topological_order(const NetworkGraph& g,
                                                          std::size_t* first_stuck = nullptr) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) index.emplace(g.nodes[i].id, i);
  std::vector<std::vector<std::size_t>> out(g.nodes.size());
  std::vector<int> indeg(g.nodes.size(), 0);
  for (const auto& e : g.edges) {
    auto s = index.find(e.src);
    auto d = index.find(e.dst);
    if (s == index.end() || d == index.end()) continue;
    out[s->second].push_back(d->second);
    ++indeg[d->second];
  }
  // Ready set ordered by original position keeps the result deterministic.
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < indeg.size(); ++i) {
    if (indeg[i] == 0) ready.insert(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(i);
    for (std::size_t j : out[i]) {
      if (--indeg[j] == 0) ready.insert(j);
    }
  }
  if (order.size() != g.nodes.size()) {
    if (first_stuck) {
      for (std::size_t i = 0; i < indeg.size(); ++i) {
        if (indeg[i] > 0) {
          *first_stuck = i;
          break;
        }
      }
    }
    return std::nullopt;
  }
  return order;
}

}  // namespace

NetworkGraph propagate_shapes(const NetworkGraph& graph, const Shape& input_shape) {
  if (input_shape.channels < 1 || input_shape.height < 1 || input_shape.width < 1) {
    throw ShapeError("input", "input shape must be positive in every dimension");
  }
  NetworkGraph g = graph;
  g.config.input_shape = input_shape;
  auto order = topological_order(g);
  if (!order) throw ShapeError("graph", "graph contains a cycle");

  std::unordered_map<std::string, std::pair<int, int>> hw;
  for (std::size_t idx : *order) {
    Node& node = g.nodes[idx];
    int in_h = 0;
    int in_w = 0;
    if (node.role == NodeRole::kStem) {
      if (node.in_channels != input_shape.channels) {
        throw ShapeError(node.id, "stem expects " + std::to_string(node.in_channels) +
                                      " input channels, input has " +
                                      std::to_string(input_shape.channels));
      }
      in_h = input_shape.height;
      in_w = input_shape.width;
    } else {
      bool first = true;
      for (const auto& e : g.edges) {
        if (e.dst != node.id) continue;
        auto it = hw.find(e.src);
        if (it == hw.end()) throw ShapeError(node.id, "input '" + e.src + "' has no shape");
        if (first) {
          std::tie(in_h, in_w) = it->second;
          first = false;
        } else if (it->second != std::make_pair(in_h, in_w)) {
          throw ShapeError(node.id, "inputs disagree on spatial size");
        }
      }
      if (first) throw ShapeError(node.id, "node has no inputs");
    }

    switch (node.role) {
      case NodeRole::kStem: {
        const int k = g.config.stem.kernel;
        const int s = g.config.stem.stride;
        const int pad = k / 2;
        node.out_height = (in_h + 2 * pad - k) / s + 1;
        node.out_width = (in_w + 2 * pad - k) / s + 1;
        break;
      }
      case NodeRole::kConv:
        node.out_height = in_h;
        node.out_width = in_w;
        break;
      case NodeRole::kTransition:
        node.out_height = in_h / 2;
        node.out_width = in_w / 2;
        break;
      case NodeRole::kGlobalPool:
      case NodeRole::kClassifier:
        node.out_height = 1;
        node.out_width = 1;
        break;
    }
    if (node.out_height < 1 || node.out_width < 1) {
      throw ShapeError(node.id, "feature map collapses to " + std::to_string(node.out_height) +
                                    "x" + std::to_string(node.out_width) + " from " +
                                    std::to_string(in_h) + "x" + std::to_string(in_w));
    }
    hw[node.id] = {node.out_height, node.out_width};
  }
  return g;
}

NetworkGraph build_annotated(const NetworkConfig& config) {
  return propagate_shapes(build_network(config), config.input_shape);
}

std::vector<Violation> validate(const NetworkGraph& graph) {
  std::vector<Violation> out;
  auto add = [&](const std::string& id, std::string msg) { out.push_back({id, std::move(msg)}); };

  std::map<std::string, int> seen;
  for (const auto& n : graph.nodes) {
    if (++seen[n.id] == 2) add(n.id, "duplicate node id " + n.id);
  }

  bool dangling = false;
  for (const auto& e : graph.edges) {
    for (const std::string* end : {&e.src, &e.dst}) {
      if (!seen.count(*end)) {
        add(*end, "dangling edge " + e.src + " -> " + e.dst + " references unknown node " + *end);
        dangling = true;
      }
    }
  }

  std::size_t stuck = 0;
  if (!topological_order(graph, &stuck)) {
    add(graph.nodes[stuck].id, "cycle detected involving " + graph.nodes[stuck].id);
  }

  std::map<std::string, std::vector<std::string>> incoming;
  for (const auto& e : graph.edges) incoming[e.dst].push_back(e.src);

  for (const auto& n : graph.nodes) {
    const auto& ins = incoming[n.id];
    if (n.role != NodeRole::kStem && ins.empty()) {
      add(n.id, "missing input at " + n.id);
      continue;
    }
    if (n.role == NodeRole::kStem) {
      if (!ins.empty()) add(n.id, "stem at " + n.id + " must have no inputs");
      continue;
    }
    if (!dangling) {
      std::int64_t sum = 0;
      for (const auto& src : ins) sum += graph.find(src)->out_channels;
      if (sum != n.in_channels) {
        add(n.id, "channel mismatch at " + n.id + ": in_channels " +
                      std::to_string(n.in_channels) + " but inputs provide " + std::to_string(sum));
      }
    }
    if (n.role == NodeRole::kConv) {
      if (!n.block || !n.layer) {
        add(n.id, "conv node " + n.id + " lacks block/layer indices");
        continue;
      }
      if (n.id != conv_id(*n.block, *n.layer)) {
        add(n.id, "node id " + n.id + " does not match block/layer " + conv_id(*n.block, *n.layer));
      }
      const auto bi = static_cast<std::size_t>(*n.block - 1);
      if (*n.block < 1 || bi >= graph.config.blocks.size() || *n.layer < 1 ||
          *n.layer > graph.config.blocks[bi].num_layers) {
        add(n.id, "conv node " + n.id + " lies outside the configured blocks");
        continue;
      }
      if (n.out_channels != graph.config.blocks[bi].growth_rate) {
        add(n.id, "growth mismatch at " + n.id + ": out_channels " +
                      std::to_string(n.out_channels) + ", growth rate " +
                      std::to_string(graph.config.blocks[bi].growth_rate));
      }
      std::vector<std::string> expected;
      if (*n.layer == 1) {
        expected.push_back(*n.block == 1 ? std::string(kStemId) : transition_id(*n.block - 1));
      } else {
        for (int p : predecessors(graph.config.scheme, *n.layer).predecessors) {
          expected.push_back(conv_id(*n.block, p));
        }
      }
      auto got = ins;
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      if (got != expected) {
        add(n.id, "connectivity mismatch at " + n.id + ": inputs do not follow the " +
                      std::string(to_string(graph.config.scheme)) + " rule");
      }
    } else if (n.role == NodeRole::kTransition) {
      if (!n.block) {
        add(n.id, "transition " + n.id + " lacks a block index");
        continue;
      }
      if (n.id != transition_id(*n.block)) {
        add(n.id, "node id " + n.id + " does not match block " + std::to_string(*n.block));
      }
      const auto bi = static_cast<std::size_t>(*n.block - 1);
      if (*n.block >= 1 && bi < graph.config.blocks.size()) {
        const std::int64_t concat =
            static_cast<std::int64_t>(graph.config.blocks[bi].num_layers) *
            graph.config.blocks[bi].growth_rate;
        if (n.out_channels != graph.config.compression.apply(concat)) {
          add(n.id, "compression mismatch at " + n.id);
        }
      }
    } else if (n.role == NodeRole::kGlobalPool) {
      if (n.in_channels != n.out_channels) add(n.id, "channel mismatch at " + n.id);
    } else if (n.role == NodeRole::kClassifier) {
      if (n.out_channels != graph.config.num_classes) {
        add(n.id, "class count mismatch at " + n.id);
      }
    }
  }
  return out;
}

}  // namespace connred
