// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "connred/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace connred {

using nlohmann::json;

namespace {

void require_valid(const NetworkGraph& graph) {
  auto v = validate(graph);
  if (graph.edges.empty()) v.push_back({"graph", "graph has no edges"});
  if (!v.empty()) throw ValidationError(std::move(v));
}

json compression_json(const Compression& c) {
  return json{{"numerator", c.numerator()}, {"denominator", c.denominator()}};
}

json model_json(const NetworkConfig& cfg) {
  json blocks = json::array();
  for (const auto& b : cfg.blocks) {
    blocks.push_back({{"num_layers", b.num_layers}, {"growth_rate", b.growth_rate}});
  }
  return json{
      {"name", cfg.name},
      {"scheme", std::string(to_string(cfg.scheme))},
      {"config",
       {{"blocks", blocks},
        {"compression", compression_json(cfg.compression)},
        {"stem",
         {{"kernel", cfg.stem.kernel},
          {"stride", cfg.stem.stride},
          {"out_channels", cfg.stem.out_channels}}},
        {"num_classes", cfg.num_classes},
        {"input_shape",
         json::array({cfg.input_shape.channels, cfg.input_shape.height, cfg.input_shape.width})}}},
  };
}

// Path-tracking accessors so errors name the offending location.

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw DocumentError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(path + "." + key, "missing required field");
  return *it;
}

const json* optional_member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw DocumentError(path, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw DocumentError(path, "integer out of range");
  }
  return static_cast<int>(x);
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw DocumentError(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw DocumentError(path, "expected an array");
  return v;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Compression parse_compression(const json& v, const std::string& path) {
  try {
    if (v.is_number_integer() || v.is_number_float()) {
      // Decimal form: snap to a fraction over 10^6.
      const double x = v.get<double>();
      constexpr std::int64_t kDen = 1'000'000;
      return Compression(static_cast<std::int64_t>(std::llround(x * kDen)), kDen);
    }
    const auto num = member(v, path, "numerator");
    const auto den = member(v, path, "denominator");
    if (!num.is_number_integer() || !den.is_number_integer()) {
      throw DocumentError(path, "numerator and denominator must be integers");
    }
    return Compression(num.get<std::int64_t>(), den.get<std::int64_t>());
  } catch (const ConfigError& e) {
    throw DocumentError(path, e.what());
  }
}

NetworkConfig parse_model(const json& m, const std::string& path) {
  NetworkConfig cfg;
  cfg.name = as_string(member(m, path, "name"), path + ".name");
  try {
    cfg.scheme = parse_scheme(as_string(member(m, path, "scheme"), path + ".scheme"));
  } catch (const std::invalid_argument& e) {
    throw DocumentError(path + ".scheme", e.what());
  }
  const std::string cpath = path + ".config";
  const json& c = member(m, path, "config");

  const std::string bpath = cpath + ".blocks";
  const json& blocks = as_array(member(c, cpath, "blocks"), bpath);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string p = at(bpath, i);
    cfg.blocks.push_back({as_int(member(blocks[i], p, "num_layers"), p + ".num_layers"),
                          as_int(member(blocks[i], p, "growth_rate"), p + ".growth_rate")});
  }
  if (const json* v = optional_member(c, "compression")) {
    cfg.compression = parse_compression(*v, cpath + ".compression");
  }
  if (const json* s = optional_member(c, "stem")) {
    const std::string sp = cpath + ".stem";
    if (const json* v = optional_member(*s, "kernel")) cfg.stem.kernel = as_int(*v, sp + ".kernel");
    if (const json* v = optional_member(*s, "stride")) cfg.stem.stride = as_int(*v, sp + ".stride");
    if (const json* v = optional_member(*s, "out_channels")) {
      cfg.stem.out_channels = as_int(*v, sp + ".out_channels");
    }
  }
  if (const json* v = optional_member(c, "num_classes")) {
    cfg.num_classes = as_int(*v, cpath + ".num_classes");
  }
  if (const json* v = optional_member(c, "input_shape")) {
    const std::string ip = cpath + ".input_shape";
    const json& a = as_array(*v, ip);
    if (a.size() != 3) throw DocumentError(ip, "expected [channels, height, width]");
    cfg.input_shape = {as_int(a[0], at(ip, 0)), as_int(a[1], at(ip, 1)), as_int(a[2], at(ip, 2))};
  }
  try {
    cfg.check();
  } catch (const ConfigError& e) {
    throw DocumentError(cpath, e.what());
  }
  return cfg;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError("$", std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string dot_label(const Node& n) {
  std::string label = n.id + "\\n" + std::string(to_string(n.role)) + " " +
                      std::to_string(n.in_channels) + "->" + std::to_string(n.out_channels);
  if (n.annotated()) {
    label += "\\n" + std::to_string(n.out_height) + "x" + std::to_string(n.out_width);
  }
  return label;
}

void dot_node(std::ostringstream& os, const Node& n, const char* indent) {
  std::string escaped;
  for (char c : dot_label(n)) {
    if (c == '"') escaped += '\\';
    escaped += c;
  }
  os << indent << dot_quote(n.id) << " [label=\"" << escaped << "\"];\n";
}

}  // namespace

std::string export_json(const NetworkGraph& graph) {
  require_valid(graph);
  json nodes = json::array();
  for (const auto& n : graph.nodes) {
    json jn = {{"id", n.id},
               {"role", std::string(to_string(n.role))},
               {"in_channels", n.in_channels},
               {"out_channels", n.out_channels},
               {"out_height", n.out_height},
               {"out_width", n.out_width}};
    if (n.block) jn["block"] = *n.block;
    if (n.layer) jn["layer"] = *n.layer;
    nodes.push_back(std::move(jn));
  }
  json edges = json::array();
  for (const auto& e : graph.edges) edges.push_back(json::array({e.src, e.dst}));
  json doc = {{"format_version", std::string(kFormatVersion)},
              {"model", model_json(graph.config)},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

NetworkGraph parse_document(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw DocumentError("$", "expected an object");
  const std::string version = as_string(member(doc, "$", "format_version"), "$.format_version");
  if (version != kFormatVersion) {
    throw VersionError("$.format_version", "unsupported format_version '" + version +
                                               "' (supported: " + std::string(kFormatVersion) + ")");
  }

  NetworkGraph g;
  g.config = parse_model(member(doc, "$", "model"), "$.model");

  const json& nodes = as_array(member(doc, "$", "nodes"), "$.nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = at("$.nodes", i);
    const json& jn = nodes[i];
    Node n;
    n.id = as_string(member(jn, p, "id"), p + ".id");
    try {
      n.role = parse_role(as_string(member(jn, p, "role"), p + ".role"));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(p + ".role", e.what());
    }
    if (const json* v = optional_member(jn, "block")) n.block = as_int(*v, p + ".block");
    if (const json* v = optional_member(jn, "layer")) n.layer = as_int(*v, p + ".layer");
    n.in_channels = as_int(member(jn, p, "in_channels"), p + ".in_channels");
    n.out_channels = as_int(member(jn, p, "out_channels"), p + ".out_channels");
    n.out_height = as_int(member(jn, p, "out_height"), p + ".out_height");
    n.out_width = as_int(member(jn, p, "out_width"), p + ".out_width");
    g.nodes.push_back(std::move(n));
  }

  const json& edges = as_array(member(doc, "$", "edges"), "$.edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = at("$.edges", i);
    const json& e = as_array(edges[i], p);
    if (e.size() != 2) throw DocumentError(p, "expected [src, dst]");
    g.edges.push_back({as_string(e[0], at(p, 0)), as_string(e[1], at(p, 1))});
  }
  return g;
}

NetworkGraph import_json(std::string_view text) {
  NetworkGraph g = parse_document(text);
  if (auto v = validate(g); !v.empty()) throw ValidationError(std::move(v));
  return g;
}

std::string export_config_json(const NetworkConfig& config) {
  config.check();
  return model_json(config).dump(2) + "\n";
}

NetworkConfig import_config_json(std::string_view text) {
  const json doc = parse_text(text);
  if (doc.is_object() && doc.contains("format_version")) {
    return parse_model(member(doc, "$", "model"), "$.model");
  }
  return parse_model(doc, "$");
}

std::string export_dot(const NetworkGraph& graph) {
  require_valid(graph);
  std::ostringstream os;
  os << "digraph " << dot_quote(graph.config.name) << " {\n";
  os << "  graph [rankdir=TB];\n";
  os << "  node [shape=box];\n";
  int current_block = 0;
  for (const auto& n : graph.nodes) {
    if (n.role == NodeRole::kConv) {
      if (*n.block != current_block) {
        if (current_block) os << "  }\n";
        current_block = *n.block;
        os << "  subgraph " << dot_quote("cluster_b" + std::to_string(current_block)) << " {\n";
        os << "    label=" << dot_quote("block " + std::to_string(current_block) + " (" +
                                        std::string(to_string(graph.config.scheme)) + ")")
           << ";\n";
      }
      dot_node(os, n, "    ");
      continue;
    }
    if (current_block) {
      os << "  }\n";
      current_block = 0;
    }
    dot_node(os, n, "  ");
  }
  if (current_block) os << "  }\n";
  for (const auto& e : graph.edges) {
    os << "  " << dot_quote(e.src) << " -> " << dot_quote(e.dst) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace connred
