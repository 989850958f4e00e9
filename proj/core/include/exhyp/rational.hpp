#ifndef EXHYP_RATIONAL_HPP
#define EXHYP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#include "exhyp/errors.hpp"

namespace exhyp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
    return Rational(big_pow(numerator(base), exp), big_pow(denominator(base), exp));
}

inline BigInt binomial_big(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= BigInt(n - i);
        r /= BigInt(i + 1);
    }
    return r;
}

// "num/den" in lowest terms, or a bare integer when the denominator is 1.
inline std::string format_rational(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "num/den", a bare integer, or a plain decimal like "2.5" (parsed exactly).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw Error(ErrorCode::BadParameters, "empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw Error(ErrorCode::BadParameters, "zero denominator: " + text);
            return Rational(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(BigInt(text));
        std::string intpart = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool neg = !intpart.empty() && intpart[0] == '-';
        if (intpart.empty() || intpart == "-" || intpart == "+") intpart += "0";
        BigInt scale = big_pow(10, static_cast<unsigned>(frac.size()));
        BigInt whole(intpart);
        BigInt num = whole * scale;
        if (!frac.empty()) {
            BigInt f(frac);
            num += neg ? -f : f;
        }
        return Rational(num, scale);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameters, "malformed rational literal: " + text);
    }
}

// All floating-point report fields are printed with 12 significant digits.
inline std::string format_double12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
}

inline double rational_to_double(const Rational& r) {
    return static_cast<double>(r);
}

} // namespace exhyp

#endif
