// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace smdc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and finite decimals such as "0.25" or "-1.5".
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals, e.g. "1,1/2,3".
std::vector<Rational> parse_rational_list(std::string_view text);

BigInt floor_int(const Rational& r);
BigInt ceil_int(const Rational& r);

BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace smdc
