// Copyright 2026 The qlbm Authors
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

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "qlbm/dilation.hpp"

namespace qlbm {
namespace cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCheckFailed = 2;

inline constexpr const char* kVersion = "0.1.0";

// Writes <out>/<case>_<path>.csv per case, <out>/summary.csv and
// <out>/manifest.txt. Fails when a path deviates from classical LBM by more
// than tol or mass drifts by more than 1e-10.
int cmd_bench(const RunConfig& cfg, std::ostream& log);

// suite ∈ {marching, norm, be, dilation, usva, qlsa, all}; writes <out>/verify_<suite>.csv.
int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& log);

struct ComplexityRow {
  dilation::ComplexityReport timemarch;
  dilation::ComplexityReport qlsa;
  double ratio = 0.0;
};

std::vector<ComplexityRow> complexity_sweep(const RunConfig& cfg);
// Writes <out>/complexity.csv.
int cmd_complexity(const RunConfig& cfg, std::ostream& log);
void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows);

}  // namespace cli
}  // namespace qlbm
