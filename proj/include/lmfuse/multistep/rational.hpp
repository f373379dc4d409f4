/* Copyright 2026 The lmfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef LMFUSE_MULTISTEP_RATIONAL_HPP_
#define LMFUSE_MULTISTEP_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <string>

#include "lmfuse/errors.hpp"

namespace lmfuse::multistep {

// Exact rational with a stored (not auto-reduced) numerator/denominator.
// Scheme tables keep their textbook form (e.g. -16/12 stays -16/12 so the
// CLI can print coefficients verbatim); arithmetic reduces results to keep
// magnitudes small. Equality compares values, not representations.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // always > 0

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw ContractError("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
  }

  constexpr double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  constexpr Rational reduced() const {
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return Rational(num / g, den / g);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den).reduced();
  }
  friend constexpr Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den).reduced();
  }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den).reduced();
  }
  friend constexpr Rational operator-(const Rational& a) {
    return Rational(-a.num, a.den);
  }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

}  // namespace lmfuse::multistep

#endif  // LMFUSE_MULTISTEP_RATIONAL_HPP_
