//------------------------------------------------------------------------------
//
//   Copyright 2026 The dfpil Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dfpil {

enum class error_kind {
  range,
  overflow,
  shape,
  index,
  config,
  validation,
  parse,
  numerical,
  empty_evidence,
  degenerate_fusion,
  oracle_scope,
};

inline char const *to_string(error_kind kind) {
  switch (kind) {
  case error_kind::range: return "range";
  case error_kind::overflow: return "overflow";
  case error_kind::shape: return "shape";
  case error_kind::index: return "index";
  case error_kind::config: return "config";
  case error_kind::validation: return "validation";
  case error_kind::parse: return "parse";
  case error_kind::numerical: return "numerical";
  case error_kind::empty_evidence: return "empty-evidence";
  case error_kind::degenerate_fusion: return "degenerate-fusion";
  case error_kind::oracle_scope: return "oracle-scope";
  }
  return "unknown";
}

/// Single exception type for the library; the kind selects the CLI exit code.
class error : public std::runtime_error {
public:
  error(error_kind kind, std::string const &what)
      : std::runtime_error(what), kind_(kind) {}

  error(error_kind kind, std::string const &what, std::vector<std::string> details)
      : std::runtime_error(what), kind_(kind), details_(std::move(details)) {}

  [[nodiscard]] error_kind kind() const noexcept { return kind_; }

  /// Individual violations, populated for validation failures.
  [[nodiscard]] std::vector<std::string> const &details() const noexcept { return details_; }

private:
  error_kind kind_;
  std::vector<std::string> details_;
};

} // namespace dfpil
