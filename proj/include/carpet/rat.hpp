#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace carpet {

// Exact arithmetic only: every scalar in the engine is a rational with an
// arbitrary-precision backing, so all comparisons are strict equalities.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (addresses, coalgebra files, fractions).
struct parse_error : error {
    using error::error;
};

// Precondition violation on an operation's arguments.
struct input_error : error {
    using error::error;
};

// Resource guard tripped (lattice level, cell count, digit search depth).
struct limit_error : error {
    using error::error;
};

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw input_error("make_rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(num) / Rat(den);
}

inline Int pow3(int k) {
    Int r = 1;
    for (int i = 0; i < k; ++i) r *= 3;
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// True iff the lowest-terms denominator is a power of 3 (1 included).
inline bool is_ternary_rational(const Rat& x) {
    Int d = denominator(x);
    while (d % 3 == 0) d /= 3;
    return d == 1;
}

// Least e with denominator(x) | 3^e; requires a ternary rational.
inline int ternary_exponent(const Rat& x) {
    Int d = denominator(x);
    int e = 0;
    while (d % 3 == 0) {
        d /= 3;
        ++e;
    }
    if (d != 1) throw input_error("ternary_exponent: not a ternary rational: " + x.str());
    return e;
}

inline std::string rat_str(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline Rat parse_rat(const std::string& s) {
    auto bad = [&] { return parse_error("bad fraction: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw bad();
        return make_rat(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

}  // namespace carpet
