#pragma once

// Exact rational scalars. GMP's mpq_class keeps every value canonical
// (lowest terms, positive denominator) after each arithmetic operation.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "lpoly/errors.hpp"

namespace lpoly {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ParseError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q", or a finite decimal such as "-0.125" exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.empty()) throw ParseError("empty rational");
    if (s.front() == '+') s.erase(s.begin());

    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const auto frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-") throw ParseError("bad decimal '" + s + "'");
        Integer num;
        if (num.set_str(digits, 10) != 0) throw ParseError("bad decimal '" + s + "'");
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational from_double(double x) {
    if (!std::isfinite(x)) throw ParseError("non-finite value");
    return Rational(x);
}

inline int sign(const Rational& r) { return sgn(r); }

inline Rational abs_r(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

inline Rational pow_r(const Rational& base, unsigned exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

inline Integer binomial(unsigned n, unsigned k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline Integer ceil_r(const Rational& r) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

inline Integer floor_r(const Rational& r) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

/// The rational with the smallest denominator in [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return Rational(0);
    if (hi < 0) return -simplest_between(-hi, -lo);
    const Integer fl = floor_r(lo);
    if (fl == lo) return Rational(fl);
    if (fl + 1 <= hi) return Rational(fl + 1);
    Rational r = Rational(fl) + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
    r.canonicalize();
    return r;
}

}  // namespace lpoly
