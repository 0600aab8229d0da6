// Copyright 2026 The wwweval Authors.
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

#ifndef WWWEVAL_REPORT_H_
#define WWWEVAL_REPORT_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace wwweval {

// Decimal rounding is applied to the shortest decimal representation of the
// double, half away from zero, so 0.95255 prints as 0.9526 even though the
// nearest binary value is slightly below the midpoint.
std::string format_fixed(double value, int decimals);

// Five significant digits in scientific notation, e.g. "2.1022e-06".
std::string format_scientific(double value, int mantissa_decimals = 4);

// Scientific notation below 0.01 ("2.8406e-03"), otherwise 4 decimals.
std::string format_pvalue(double p);

struct PValue {
  double value = 0.0;
};

using ReportCell = std::variant<std::string, double, std::int64_t, PValue>;

struct TsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<ReportCell>> rows;
  int decimals = 4;
};

// Header line plus one line per row, tab separated, LF terminated. Rows are
// emitted in the order given.
std::string write_tsv_report(const TsvTable &table);

}  // namespace wwweval

#endif  // WWWEVAL_REPORT_H_
