// Copyright 2026 The securegap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact integer and rational arithmetic shared by every module.

#ifndef SECUREGAP_RATIONAL_HPP_
#define SECUREGAP_RATIONAL_HPP_

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "securegap/errors.hpp"

namespace securegap {

using BigInt = boost::multiprecision::cpp_int;
// Always normalized: lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// Integer floor of a / b (rounds toward negative infinity).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw InvalidArgument("floor_div: division by zero");
  BigInt q;
  BigInt r;
  boost::multiprecision::divide_qr(a, b, q, r);  // truncates toward zero
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// Floor of a rational as an integer.
inline BigInt floor(const Rational& x) {
  return floor_div(boost::multiprecision::numerator(x),
                   boost::multiprecision::denominator(x));
}

// Largest multiple of gamma not exceeding x.
inline Rational round_down_to(const Rational& x, const Rational& gamma) {
  if (gamma <= 0) throw InvalidArgument("round_down_to: gamma must be > 0");
  return Rational(floor(x / gamma)) * gamma;
}

inline BigInt ipow(const BigInt& base, std::uint32_t exponent) {
  return boost::multiprecision::pow(base, exponent);
}

// Strict base-10 parse (cpp_int's own string constructor reads a leading 0 as
// octal).
inline BigInt parse_bigint(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw InvalidArgument("expected an integer");
  BigInt out = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("expected an integer, got \"" + std::string(text) + "\"");
    }
    out = out * 10 + (c - '0');
  }
  return negative ? BigInt(-out) : out;
}

// Parses "num/den" or a bare integer "num". Decimal and exponent notation are
// rejected so that no binary floating-point value can enter a mechanism
// parameter.
inline Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-') {
    throw InvalidArgument("expected a fraction \"num/den\", got \"" +
                          std::string(text) + "\"");
  }
  const BigInt d = parse_bigint(den);
  if (d == 0) throw InvalidArgument("zero denominator in \"" + std::string(text) + "\"");
  return Rational(parse_bigint(num), d);
}

inline std::string to_string(const Rational& x) {
  const BigInt& den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

}  // namespace securegap

#endif  // SECUREGAP_RATIONAL_HPP_
