// Copyright 2026 The pclif authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pclif/frame.hpp"

#include <sstream>

#include "json.hpp"

namespace pclif {

bool check_frame(const Frame& f) {
  const std::size_t m = f.rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& [xi, zi] = f.rows[i];
    if (omega(zi.vector, xi.vector) != 1) return false;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto& [xj, zj] = f.rows[j];
      if (omega(xi.vector, xj.vector) != 0) return false;
      if (omega(zi.vector, zj.vector) != 0) return false;
      if (omega(xi.vector, zj.vector) != 0) return false;
    }
  }
  return true;
}

std::string render_frame(const Frame& f) {
  std::ostringstream out;
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    out << "X" << (i + 1) << " -> " << render_pauli(f.rows[i].first) << " ; Z" << (i + 1)
        << " -> " << render_pauli(f.rows[i].second) << "\n";
  }
  return out.str();
}

std::string frame_to_json(const Frame& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [px, pz] : f.rows) {
    rows.push_back({{px.phase, px.vector.entries()}, {pz.phase, pz.vector.entries()}});
  }
  return rows.dump();
}

}  // namespace pclif
