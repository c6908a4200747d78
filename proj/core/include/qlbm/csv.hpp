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

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace qlbm {
namespace csv {

// Locale-independent shortest round-trip form.
std::string num(double v);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  Writer& cell(const std::string& s);
  Writer& cell(const char* s) { return cell(std::string(s)); }
  Writer& cell(double v);
  Writer& cell(std::size_t v);
  Writer& cell(int v);
  Writer& cell(bool v);
  void end_row();
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace csv
}  // namespace qlbm
