// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "connred/network.hpp"
#include "connred/table.hpp"

namespace connred {

/// Counting rules shared by every report.
///
/// One MAC per multiply-accumulate; MAdd = madd_per_mac * MACs. BN, ReLU and
/// pooling arithmetic is not counted. Parameters: conv weights
/// (in * out * kh * kw, no bias), bn_params_per_channel per BN input channel,
/// classifier weights plus bias.
///
/// Memory and traffic are accounted per primitive operator inside a composite
/// (BN, ReLU, conv, pool): every operator writes its output tensor and reads
/// its input tensor plus its parameters. Memory is the sum of written bytes.
struct CostConvention {
  int bytes_per_element = 4;
  int madd_per_mac = 2;
  int bn_params_per_channel = 2;

  bool operator==(const CostConvention&) const = default;
};

/// Cost of a BN + ReLU + conv composite, or of a bare conv when BN is ignored.
struct ConvCost {
  std::int64_t weight_params = 0;  // in_c * out_c * kh * kw
  std::int64_t bn_params = 0;      // 2 * in_c under the default convention
  std::int64_t macs = 0;
  std::int64_t madd = 0;

  std::int64_t params() const noexcept { return weight_params + bn_params; }
};

/// Throws std::invalid_argument on nonpositive arguments and
/// std::overflow_error if any count exceeds 64 bits.
ConvCost conv_cost(std::int64_t in_c, std::int64_t out_c, std::int64_t kh, std::int64_t kw,
                   std::int64_t out_h, std::int64_t out_w,
                   const CostConvention& convention = {});

struct LayerCost {
  std::string node_id;
  std::int64_t params = 0;
  std::int64_t macs = 0;
  std::int64_t madd = 0;
  std::int64_t act_out_bytes = 0;
  std::int64_t read_bytes = 0;
  std::int64_t write_bytes = 0;

  bool operator==(const LayerCost&) const = default;
};

struct CostTotals {
  std::int64_t params = 0;
  std::int64_t macs = 0;
  std::int64_t madd = 0;
  std::int64_t memory_bytes = 0;
  std::int64_t read_bytes = 0;
  std::int64_t write_bytes = 0;

  std::int64_t memrw_bytes() const noexcept { return read_bytes + write_bytes; }
  double memory_mib() const noexcept;
  double memrw_mib() const noexcept;

  bool operator==(const CostTotals&) const = default;
};

struct CostReport {
  std::string model;
  CostConvention convention;
  std::vector<LayerCost> layers;  // graph node order
  CostTotals totals;

  const LayerCost* find(std::string_view node_id) const;
};

/// Throws std::invalid_argument if the graph is not shape-annotated and
/// ValidationError if it violates a structural invariant.
CostReport network_cost(const NetworkGraph& graph, const CostConvention& convention = {});

/// Table-2-style summary: one row per report in input order.
struct ComparisonRow {
  std::string model;
  std::int64_t macs = 0;
  std::int64_t madd = 0;
  std::int64_t memory_bytes = 0;
  std::int64_t params = 0;
  std::int64_t memrw_bytes = 0;
};

class ComparisonTable {
 public:
  explicit ComparisonTable(std::vector<ComparisonRow> rows) : rows_(std::move(rows)) {}

  const std::vector<ComparisonRow>& rows() const noexcept { return rows_; }
  /// Columns: Model, Flops (M), MAdd (G), Memory (MiB), #Params (M), MemR+W (MiB).
  TextTable table() const;
  std::string render(TableFormat format) const { return table().render(format); }

 private:
  std::vector<ComparisonRow> rows_;
};

ComparisonTable compare(const std::vector<CostReport>& reports);

/// Fixed two-decimal rendering of value / scale, rounding half up; exact zero
/// renders as "0". Negative values are not expected.
std::string format_scaled(std::int64_t value, std::int64_t scale);

}  // namespace connred
