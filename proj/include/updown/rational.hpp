#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "updown/errors.hpp"

namespace updown {

// All budgets, prices, times, scores and entitlement values are exact
// rationals. No floating point participates in any rule or audit decision.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest integer <= q.
inline BigInt floor_of(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q); // canonical: den > 0
    BigInt d = num / den;
    if (num < 0 && d * den != num)
        --d;
    return d;
}

/// Smallest integer >= q.
inline BigInt ceil_of(const Rational& q) {
    return -floor_of(-q);
}

inline bool fits_long(const BigInt& v) {
    return v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max();
}

/// "num/den" in lowest terms; integers render without the "/1".
inline std::string to_fraction_string(const Rational& q) {
    BigInt den = denominator(q);
    std::string s = numerator(q).str();
    if (den != 1)
        s += "/" + den.str();
    return s;
}

/// Accepts "num", "num/den" and plain decimals ("0.25" -> 1/4).
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0)
                throw ParseError("ParseError: zero denominator in \"" + s + "\"");
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            BigInt whole = dot > 0 ? BigInt(s.substr(0, dot)) : BigInt(0);
            std::string frac = s.substr(dot + 1);
            if (frac.empty())
                return Rational(whole);
            BigInt den = 1;
            for (size_t i = 0; i < frac.size(); ++i)
                den *= 10;
            BigInt num = whole * den;
            BigInt fnum(frac);
            bool negative = !s.empty() && s[0] == '-';
            num += negative ? -fnum : fnum;
            return Rational(num, den);
        }
        return Rational(BigInt(s));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("ParseError: cannot parse rational \"" + s + "\"");
    }
}

} // namespace updown
