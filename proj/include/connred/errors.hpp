// Copyright 2026 The connred Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace connred {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid NetworkConfig (zero blocks, nonpositive sizes, bad compression).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Spatial shape propagation failed, e.g. a feature map collapsed to 0.
class ShapeError : public Error {
 public:
  ShapeError(std::string node_id, const std::string& what)
      : Error("shape error at " + node_id + ": " + what), node_id_(std::move(node_id)) {}
  const std::string& node_id() const noexcept { return node_id_; }

 private:
  std::string node_id_;
};

/// One failed graph invariant.
struct Violation {
  std::string node_id;
  std::string message;  // starts with a short kind, e.g. "channel mismatch at b1.l3"

  bool operator==(const Violation&) const = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Malformed graph document. `path()` is a JSON-pointer-like location ("$.nodes[3].role").
class DocumentError : public Error {
 public:
  DocumentError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class VersionError : public DocumentError {
 public:
  using DocumentError::DocumentError;
};

}  // namespace connred
