// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#include "connred/costmodel.hpp"

#include <stdexcept>

namespace connred {

namespace {

constexpr std::int64_t kMiB = 1024 * 1024;

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cost counter overflow");
  return r;
}

std::int64_t mul(std::initializer_list<std::int64_t> xs) {
  std::int64_t r = 1;
  for (std::int64_t x : xs) r = mul(r, x);
  return r;
}

// Element traffic of one primitive operator.
struct OpTraffic {
  std::int64_t read = 0;
  std::int64_t written = 0;

  void op(std::int64_t in_elems, std::int64_t param_elems, std::int64_t out_elems) {
    read += in_elems + param_elems;
    written += out_elems;
  }
};

}  // namespace

double CostTotals::memory_mib() const noexcept {
  return static_cast<double>(memory_bytes) / static_cast<double>(kMiB);
}

double CostTotals::memrw_mib() const noexcept {
  return static_cast<double>(memrw_bytes()) / static_cast<double>(kMiB);
}

ConvCost conv_cost(std::int64_t in_c, std::int64_t out_c, std::int64_t kh, std::int64_t kw,
                   std::int64_t out_h, std::int64_t out_w, const CostConvention& convention) {
  if (in_c < 1 || out_c < 1 || kh < 1 || kw < 1 || out_h < 1 || out_w < 1) {
    throw std::invalid_argument("conv_cost arguments must be positive");
  }
  ConvCost c;
  c.weight_params = mul({in_c, out_c, kh, kw});
  c.bn_params = mul(convention.bn_params_per_channel, in_c);
  c.macs = mul(c.weight_params, mul(out_h, out_w));
  c.madd = mul(convention.madd_per_mac, c.macs);
  return c;
}

const LayerCost* CostReport::find(std::string_view node_id) const {
  for (const auto& l : layers) {
    if (l.node_id == node_id) return &l;
  }
  return nullptr;
}

CostReport network_cost(const NetworkGraph& graph, const CostConvention& convention) {
  if (!graph.annotated()) {
    throw std::invalid_argument("network_cost needs a shape-annotated graph; run propagate_shapes");
  }
  if (auto v = validate(graph); !v.empty()) throw ValidationError(std::move(v));

  CostReport report;
  report.model = graph.config.name;
  report.convention = convention;

  for (const Node& node : graph.nodes) {
    LayerCost lc;
    lc.node_id = node.id;
    OpTraffic t;
    const std::int64_t in_c = node.in_channels;
    const std::int64_t out_c = node.out_channels;
    const std::int64_t out_area = mul(node.out_height, node.out_width);

    std::int64_t in_h = graph.config.input_shape.height;
    std::int64_t in_w = graph.config.input_shape.width;
    if (node.role != NodeRole::kStem) {
      const auto inputs = graph.inputs_of(node.id);
      in_h = inputs.front()->out_height;
      in_w = inputs.front()->out_width;
    }
    const std::int64_t in_area = mul(in_h, in_w);
    const std::int64_t in_elems = mul(in_c, in_area);

    switch (node.role) {
      case NodeRole::kStem: {
        const int k = graph.config.stem.kernel;
        const ConvCost c = conv_cost(in_c, out_c, k, k, node.out_height, node.out_width, convention);
        lc.params = c.weight_params;
        lc.macs = c.macs;
        t.op(in_elems, c.weight_params, mul(out_c, out_area));
        break;
      }
      case NodeRole::kConv: {
        const ConvCost c = conv_cost(in_c, out_c, 3, 3, node.out_height, node.out_width, convention);
        lc.params = c.params();
        lc.macs = c.macs;
        t.op(in_elems, c.bn_params, in_elems);  // BN
        t.op(in_elems, 0, in_elems);            // ReLU
        t.op(in_elems, c.weight_params, mul(out_c, out_area));
        break;
      }
      case NodeRole::kTransition: {
        // 1x1 conv at block resolution, then 2x2 average pool.
        const ConvCost c = conv_cost(in_c, out_c, 1, 1, in_h, in_w, convention);
        lc.params = c.params();
        lc.macs = c.macs;
        const std::int64_t conv_out = mul(out_c, in_area);
        t.op(in_elems, c.bn_params, in_elems);
        t.op(in_elems, 0, in_elems);
        t.op(in_elems, c.weight_params, conv_out);
        t.op(conv_out, 0, mul(out_c, out_area));
        break;
      }
      case NodeRole::kGlobalPool:
        t.op(in_elems, 0, out_c);
        break;
      case NodeRole::kClassifier: {
        const std::int64_t weights = mul(in_c, out_c);
        lc.params = weights + out_c;
        lc.macs = weights;
        t.op(in_elems, lc.params, out_c);
        break;
      }
    }
    lc.madd = mul(convention.madd_per_mac, lc.macs);
    lc.read_bytes = mul(t.read, convention.bytes_per_element);
    lc.write_bytes = mul(t.written, convention.bytes_per_element);
    lc.act_out_bytes = lc.write_bytes;

    report.totals.params += lc.params;
    report.totals.macs += lc.macs;
    report.totals.madd += lc.madd;
    report.totals.memory_bytes += lc.act_out_bytes;
    report.totals.read_bytes += lc.read_bytes;
    report.totals.write_bytes += lc.write_bytes;
    report.layers.push_back(std::move(lc));
  }
  return report;
}

std::string format_scaled(std::int64_t value, std::int64_t scale) {
  if (value == 0) return "0";
  if (scale < 1) throw std::invalid_argument("format_scaled needs a positive scale");
  // round(value * 100 / scale), half up
  const std::int64_t hundredths = (mul(value, 100) + scale / 2) / scale;
  const std::int64_t whole = hundredths / 100;
  const auto frac = static_cast<int>(hundredths % 100);
  return std::to_string(whole) + "." + (frac < 10 ? "0" : "") + std::to_string(frac);
}

TextTable ComparisonTable::table() const {
  TextTable t;
  t.header = {"Model", "Flops (M)", "MAdd (G)", "Memory (MiB)", "#Params (M)", "MemR+W (MiB)"};
  t.right_align = {false, true, true, true, true, true};
  for (const auto& r : rows_) {
    t.rows.push_back({r.model, format_scaled(r.macs, 1'000'000),
                      format_scaled(r.madd, 1'000'000'000), format_scaled(r.memory_bytes, kMiB),
                      format_scaled(r.params, 1'000'000), format_scaled(r.memrw_bytes, kMiB)});
  }
  return t;
}

ComparisonTable compare(const std::vector<CostReport>& reports) {
  std::vector<ComparisonRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) {
    rows.push_back({r.model, r.totals.macs, r.totals.madd, r.totals.memory_bytes, r.totals.params,
                    r.totals.memrw_bytes()});
  }
  return ComparisonTable(std::move(rows));
}

}  // namespace connred
