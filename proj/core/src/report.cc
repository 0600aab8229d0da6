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

#include "wwweval/report.h"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace wwweval {

namespace {

// value == 0.d1d2d3... * 10^point, digits without leading zeros.
struct Decimal {
  bool negative = false;
  std::string digits;
  int point = 0;
};

Decimal to_decimal(double value) {
  Decimal d;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::scientific);
  std::string_view s(buf, static_cast<std::size_t>(ptr - buf));
  if (!s.empty() && s.front() == '-') {
    d.negative = true;
    s.remove_prefix(1);
  }
  auto e = s.find('e');
  for (char c : s.substr(0, e))
    if (c != '.') d.digits += c;
  int exponent = std::atoi(std::string(s.substr(e + 1)).c_str());
  d.point = exponent + 1;
  return d;
}

// Keeps the first `keep` digits, rounding half away from zero. keep may be
// zero or negative; the result then has no digits (zero) or a single carry.
void round_digits(Decimal &d, int keep) {
  if (keep < 0) {
    d.digits.clear();
    return;
  }
  if (static_cast<int>(d.digits.size()) <= keep) return;
  bool up = d.digits[static_cast<std::size_t>(keep)] >= '5';
  d.digits.resize(static_cast<std::size_t>(keep));
  if (!up) return;
  int i = keep - 1;
  while (i >= 0 && d.digits[static_cast<std::size_t>(i)] == '9') {
    d.digits[static_cast<std::size_t>(i)] = '0';
    --i;
  }
  if (i >= 0) {
    ++d.digits[static_cast<std::size_t>(i)];
  } else {
    d.digits.insert(d.digits.begin(), '1');
    ++d.point;
  }
}

bool all_zero(const std::string &digits) {
  return digits.find_first_not_of('0') == std::string::npos;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  Decimal d = to_decimal(value);
  if (value == 0.0) d.digits.clear();
  round_digits(d, d.point + decimals);

  std::string int_part;
  std::string frac_part;
  auto digit_at = [&](int k) -> char {  // k: index from the first digit
    if (k < 0 || k >= static_cast<int>(d.digits.size())) return '0';
    return d.digits[static_cast<std::size_t>(k)];
  };
  if (d.point <= 0) {
    int_part = "0";
  } else {
    for (int k = 0; k < d.point; ++k) int_part += digit_at(k);
  }
  for (int k = 0; k < decimals; ++k) frac_part += digit_at(d.point + k);

  bool zero = all_zero(int_part) && all_zero(frac_part);
  std::string out = (d.negative && !zero) ? "-" : "";
  out += int_part;
  if (decimals > 0) out += "." + frac_part;
  return out;
}

std::string format_scientific(double value, int mantissa_decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  Decimal d = to_decimal(value);
  int exponent = d.point - 1;
  if (value == 0.0) {
    d.digits = "0";
    exponent = 0;
  } else {
    round_digits(d, mantissa_decimals + 1);
    exponent = d.point - 1;
  }
  d.digits.resize(static_cast<std::size_t>(mantissa_decimals + 1), '0');
  std::string out = d.negative ? "-" : "";
  out += d.digits[0];
  if (mantissa_decimals > 0) out += "." + d.digits.substr(1);
  out += exponent < 0 ? "e-" : "e+";
  int mag = std::abs(exponent);
  if (mag < 10) out += '0';
  out += std::to_string(mag);
  return out;
}

std::string format_pvalue(double p) {
  if (p > 0.0 && p < 1e-2) return format_scientific(p, 4);
  return format_fixed(p, 4);
}

std::string write_tsv_report(const TsvTable &table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += '\t';
    out += table.header[i];
  }
  out += '\n';
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      const auto &cell = row[i];
      if (auto s = std::get_if<std::string>(&cell)) {
        out += *s;
      } else if (auto x = std::get_if<double>(&cell)) {
        out += format_fixed(*x, table.decimals);
      } else if (auto n = std::get_if<std::int64_t>(&cell)) {
        out += std::to_string(*n);
      } else {
        out += format_pvalue(std::get<PValue>(cell).value);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace wwweval
