#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace walab {

// All weights live in Q; all integers that can grow (norms, run counts,
// combinatorial bounds) are arbitrary precision. GMP keeps rationals
// canonical: denominator > 0, gcd(|num|, den) = 1.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int num(const Rational& q) { return numerator(q); }
inline Int den(const Rational& q) { return denominator(q); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Int int_abs(const Int& n) { return n < 0 ? Int(-n) : n; }

enum class ArithOp { Add, Sub, Mul, Div };

inline Rational rat_arith(const Rational& a, const Rational& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div:
            if (b == 0) throw std::domain_error("rat_arith: division by zero");
            return a / b;
    }
    throw std::logic_error("rat_arith: bad op");
}

// Accepts "3", "-3", "+3", "1/2", "-1/2". Rejects anything else, in
// particular decimal notation: weights are exact, "0.5" is a format error.
inline Rational parse_rational(std::string_view s) {
    auto fail = [&] {
        throw std::invalid_argument("not a rational literal: '" + std::string(s) + "'");
    };
    if (s.empty()) fail();
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::size_t num_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == num_begin) fail();
    Int n(std::string(s.substr(num_begin, i - num_begin)));
    if (neg) n = -n;
    if (i == s.size()) return Rational(n);
    if (s[i] != '/') fail();
    std::size_t den_begin = ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == den_begin || i != s.size()) fail();
    Int d(std::string(s.substr(den_begin)));
    if (d == 0) throw std::invalid_argument("rational literal with zero denominator");
    return Rational(n, d);
}

inline std::string rational_to_string(const Rational& q) {
    std::string out = num(q).str();
    if (den(q) != 1) {
        out += '/';
        out += den(q).str();
    }
    return out;
}

}  // namespace walab
