// SPDX-License-Identifier: Apache-2.0
#include "smdc/rational.hpp"

#include "smdc/errors.hpp"

#include <cctype>

namespace smdc {

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) throw InvalidParameterError("malformed rational '" + std::string(whole) + "'");
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidParameterError("malformed rational '" + std::string(whole) + "'");
    }
    return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(text.substr(0, slash), whole);
        const BigInt den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) throw InvalidParameterError("zero denominator in '" + std::string(whole) + "'");
        value = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty())
            throw InvalidParameterError("malformed rational '" + std::string(whole) + "'");
        const BigInt ip = int_part.empty() ? BigInt(0) : parse_integer(int_part, whole);
        const BigInt fp = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, whole);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        value = Rational(ip) + Rational(fp, scale);
    } else {
        value = Rational(parse_integer(text, whole));
    }
    return negative ? Rational(-value) : value;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_rational(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

BigInt floor_int(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

BigInt ceil_int(const Rational& r) { return -floor_int(-r); }

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

}  // namespace smdc
