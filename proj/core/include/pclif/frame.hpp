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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pclif/pauli.hpp"

namespace pclif {

// Pauli frame (tableau): row i holds (U X_i U^dag, U Z_i U^dag).
struct Frame {
  std::vector<std::pair<PauliElement, PauliElement>> rows;

  bool operator==(const Frame& o) const { return rows == o.rows; }
};

// Well-formedness: omega(pz_i, px_i) = 1 for each row, and for i != j all
// four cross pairs (x/x, z/z, x/z, z/x) have omega = 0.
bool check_frame(const Frame& f);

// One row per line: "Xi -> ... ; Zi -> ...".
std::string render_frame(const Frame& f);

// Machine-readable dump: per row [[t_x, [vec]], [t_z, [vec]]], as a JSON
// string of nested integer arrays.
std::string frame_to_json(const Frame& f);

}  // namespace pclif
