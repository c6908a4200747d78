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

#include "qlbm/csv.hpp"

#include <charconv>
#include <cmath>

namespace qlbm {
namespace csv {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  // Shortest form that parses back to the same double.
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Writer& Writer::cell(const std::string& s) {
  if (!first_) out_ << ',';
  first_ = false;
  if (s.find_first_of(",\"\n") != std::string::npos) {
    out_ << '"';
    for (char ch : s) {
      if (ch == '"') out_ << '"';
      out_ << ch;
    }
    out_ << '"';
  } else {
    out_ << s;
  }
  return *this;
}

Writer& Writer::cell(double v) { return cell(num(v)); }
Writer& Writer::cell(std::size_t v) { return cell(std::to_string(v)); }
Writer& Writer::cell(int v) { return cell(std::to_string(v)); }
Writer& Writer::cell(bool v) { return cell(std::string(v ? "true" : "false")); }

void Writer::end_row() {
  out_ << '\n';
  first_ = true;
}

void Writer::row(const std::vector<std::string>& cells) {
  for (const auto& c : cells) cell(c);
  end_row();
}

}  // namespace csv
}  // namespace qlbm
