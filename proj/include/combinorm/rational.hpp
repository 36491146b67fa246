#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace combinorm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline int sgn(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

/// Renders in lowest terms, always with an explicit denominator ("3/1", "-2/5").
inline std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

}  // namespace combinorm
