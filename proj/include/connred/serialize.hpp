// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "connred/network.hpp"

namespace connred {

inline constexpr std::string_view kFormatVersion = "1";

/// Canonical graph document (schema in docs/graph_document.md). Keys are
/// sorted, indentation is two spaces, the output ends with a newline, and
/// identical graphs always produce identical bytes.
/// Throws ValidationError for graphs that fail validate().
std::string export_json(const NetworkGraph& graph);

/// Parses a document without checking graph invariants. Throws DocumentError
/// (with the offending path) on malformed input and VersionError for an
/// unsupported format_version.
NetworkGraph parse_document(std::string_view text);

/// parse_document followed by validate(); throws ValidationError when the
/// graph breaks an invariant.
NetworkGraph import_json(std::string_view text);

/// The "model" object of a document: name, scheme and config echo.
std::string export_config_json(const NetworkConfig& config);

/// Accepts either a bare model object or a full graph document (whose
/// "model" member is used). Compression may be given as
/// {"numerator": n, "denominator": d} or as a decimal number.
NetworkConfig import_config_json(std::string_view text);

/// Graphviz digraph with one cluster per block. Throws ValidationError for
/// invalid graphs.
std::string export_dot(const NetworkGraph& graph);

}  // namespace connred
