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

#include <string>
#include <vector>

namespace dfpil {

/// A flagged, non-fatal event (clamp, tie, entropy floor, override, ...).
struct Diagnostic {
  std::string kind;
  std::string where;
  std::string detail;
};

using Diagnostics = std::vector<Diagnostic>;

inline void note(Diagnostics *sink, std::string kind, std::string where, std::string detail) {
  if (sink != nullptr) {
    sink->push_back({std::move(kind), std::move(where), std::move(detail)});
  }
}

} // namespace dfpil
