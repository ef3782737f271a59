// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "connred/cli.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "connred/costmodel.hpp"
#include "connred/serialize.hpp"

namespace connred::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeFlags {
  std::optional<int> channels;
  std::optional<int> height;
  std::optional<int> width;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string() + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string available_presets() {
  std::string s;
  for (const auto& n : preset_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

NetworkConfig resolve_model(const std::string& selector, const ShapeFlags& shape) {
  NetworkConfig cfg;
  if (is_preset(selector)) {
    cfg = preset(selector);
  } else if (std::error_code ec; fs::is_regular_file(selector, ec)) {
    cfg = import_config_json(read_file(selector));
  } else {
    throw UsageError("unknown model '" + selector + "'; available presets: " +
                     available_presets() + " (or a path to a config file)");
  }
  if (shape.channels) cfg.input_shape.channels = *shape.channels;
  if (shape.height) cfg.input_shape.height = *shape.height;
  if (shape.width) cfg.input_shape.width = *shape.width;
  return cfg;
}

// Writes to a sibling temp file and renames it over `path`, so a failed
// write never leaves a partial artifact behind.
void write_atomically(const std::string& path, const std::string& data) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw std::runtime_error("cannot write " + path + ": " + std::strerror(errno));
    }
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    os.flush();
    if (!os) {
      const std::string cause = std::strerror(errno);
      os.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + path + ": " + cause);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot write " + path + ": " + ec.message());
  }
}

void emit(const std::string& data, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << data;
  } else {
    write_atomically(out_path, data);
  }
}

std::string join_inputs(const NetworkGraph& g, const Node& n) {
  std::string s;
  for (const Node* in : g.inputs_of(n.id)) s += (s.empty() ? "" : ",") + in->id;
  return s;
}

std::string describe(const NetworkConfig& cfg, TableFormat format) {
  const NetworkGraph g = build_annotated(cfg);
  const CostReport report = network_cost(g);
  TextTable t;
  t.header = {"id", "role", "inputs", "in_ch", "out_ch", "HxW", "params", "MACs"};
  t.right_align = {false, false, false, true, true, true, true, true};
  for (const Node& n : g.nodes) {
    const LayerCost* lc = report.find(n.id);
    t.rows.push_back({n.id, std::string(to_string(n.role)), join_inputs(g, n),
                      std::to_string(n.in_channels), std::to_string(n.out_channels),
                      std::to_string(n.out_height) + "x" + std::to_string(n.out_width),
                      std::to_string(lc->params), std::to_string(lc->macs)});
  }
  t.rows.push_back({"total", "", "", "", "", "", std::to_string(report.totals.params),
                    std::to_string(report.totals.macs)});
  return t.render(format);
}

void add_shape_flags(CLI::App* cmd, ShapeFlags& shape) {
  cmd->add_option("--channels", shape.channels, "Input channels (default 3)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--height", shape.height, "Input height (default 32)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--width", shape.width, "Input width (default 32)")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connection-topology generator and analytic cost model for DenseNet-style networks",
               "connred"};
  app.require_subcommand(1);

  ShapeFlags shape;
  std::string format_name = "text";
  std::string out_path;
  std::string model;
  std::vector<std::string> models;
  const std::vector<std::string> formats = {"text", "csv", "markdown", "md"};

  auto* describe_cmd = app.add_subcommand("describe", "Per-node table with costs and totals");
  describe_cmd->add_option("model", model, "Preset name or config file")->required();
  describe_cmd->add_option("--format", format_name, "text, csv or markdown")
      ->check(CLI::IsMember(formats));
  add_shape_flags(describe_cmd, shape);

  auto* compare_cmd = app.add_subcommand("compare", "Cost summary, one row per model");
  compare_cmd->add_option("models", models, "Preset names or config files")->required();
  compare_cmd->add_option("--format", format_name, "text, csv or markdown")
      ->check(CLI::IsMember(formats));
  add_shape_flags(compare_cmd, shape);

  auto* export_cmd = app.add_subcommand("export", "Write the graph document (JSON)");
  export_cmd->add_option("model", model, "Preset name or config file")->required();
  export_cmd->add_option("--out,-o", out_path, "Output path (default stdout)");
  add_shape_flags(export_cmd, shape);

  auto* graph_cmd = app.add_subcommand("graph", "Write a Graphviz DOT rendering");
  graph_cmd->add_option("model", model, "Preset name or config file")->required();
  graph_cmd->add_option("--out,-o", out_path, "Output path (default stdout)");
  add_shape_flags(graph_cmd, shape);

  auto* validate_cmd =
      app.add_subcommand("validate", "Check a preset, config file or graph document");
  validate_cmd->add_option("model", model, "Preset name, config file or graph document")
      ->required();
  add_shape_flags(validate_cmd, shape);

  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-' &&
      app.get_subcommand_no_throw(args[1]) == nullptr) {
    err << "error: unknown subcommand '" << args[1] << "'\n\n" << app.help();
    return kUsage;
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (describe_cmd->parsed()) {
      out << describe(resolve_model(model, shape), parse_table_format(format_name));
    } else if (compare_cmd->parsed()) {
      // Resolve everything first so a bad selector aborts before any work.
      std::vector<NetworkConfig> configs;
      for (const auto& m : models) configs.push_back(resolve_model(m, shape));
      std::vector<CostReport> reports;
      for (const auto& cfg : configs) reports.push_back(network_cost(build_annotated(cfg)));
      out << compare(reports).render(parse_table_format(format_name));
    } else if (export_cmd->parsed()) {
      const std::string doc = export_json(build_annotated(resolve_model(model, shape)));
      emit(doc, out_path, out);
    } else if (graph_cmd->parsed()) {
      const std::string dot = export_dot(build_annotated(resolve_model(model, shape)));
      emit(dot, out_path, out);
    } else if (validate_cmd->parsed()) {
      NetworkGraph g;
      std::error_code ec;
      if (!is_preset(model) && fs::is_regular_file(model, ec)) {
        const std::string text = read_file(model);
        if (text.find("\"format_version\"") != std::string::npos) {
          g = parse_document(text);
        } else {
          g = build_annotated(resolve_model(model, shape));
        }
      } else {
        g = build_annotated(resolve_model(model, shape));
      }
      const auto violations = validate(g);
      if (!violations.empty()) {
        for (const auto& v : violations) err << v.message << "\n";
        return kFailure;
      }
      out << "ok: " << g.config.name << " (" << g.nodes.size() << " nodes, " << g.edges.size()
          << " edges)\n";
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace connred::cli
