#pragma once

#include "carpet/rat.hpp"

#include <map>
#include <vector>

namespace carpet {

// Eventually periodic base-3 digit stream for a value in [0,1]:
// sum of digit[k] * 3^-(k+1) over preperiod then period repeated forever.
struct TernaryStream {
    std::vector<int> preperiod;
    std::vector<int> period;  // nonempty
};

enum class TernaryVariant { low, high };

inline Rat eval_ternary(const TernaryStream& s) {
    if (s.period.empty()) throw input_error("eval_ternary: empty period");
    Int pre = 0;
    for (int d : s.preperiod) pre = pre * 3 + d;
    Int per = 0;
    for (int d : s.period) per = per * 3 + d;
    int p = static_cast<int>(s.preperiod.size());
    int l = static_cast<int>(s.period.size());
    Int q = pow3(l) - 1;
    // pre/3^p + (per/q)/3^p
    return make_rat(pre * q + per, pow3(p) * q);
}

// Exact ternary expansion of x in [0,1].  Ternary rationals have two
// expansions; `variant` selects the 0-tail (low) or 2-tail (high) one.
// Everything else has a unique expansion found by long division with
// cycle detection, and the variant flag is ignored.
inline TernaryStream to_ternary(const Rat& x, TernaryVariant variant = TernaryVariant::low) {
    if (x < 0 || x > 1) throw input_error("to_ternary: value outside [0,1]: " + rat_str(x));
    if (is_ternary_rational(x)) {
        if (x == 0) return {{}, {0}};
        if (x == 1) return {{}, {2}};
        int e = ternary_exponent(x);
        Int n = numerator(x) * (pow3(e) / denominator(x));
        std::vector<int> digits(e);
        for (int i = e - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(n % 3);
            n /= 3;
        }
        if (variant == TernaryVariant::low) return {digits, {0}};
        digits.back() -= 1;  // lowest terms: last digit nonzero
        return {digits, {2}};
    }
    Int q = denominator(x);
    Int p = numerator(x);
    std::vector<int> digits;
    std::map<Int, int> seen;  // remainder -> digit index
    while (true) {
        auto it = seen.find(p);
        if (it != seen.end()) {
            std::vector<int> pre(digits.begin(), digits.begin() + it->second);
            std::vector<int> per(digits.begin() + it->second, digits.end());
            return {pre, per};
        }
        seen.emplace(p, static_cast<int>(digits.size()));
        p *= 3;
        Int d = p / q;
        digits.push_back(static_cast<int>(d));
        p -= d * q;
    }
}

// Digit at position t (0-based) of the infinite stream.
inline int ternary_digit(const TernaryStream& s, std::size_t t) {
    if (t < s.preperiod.size()) return s.preperiod[t];
    return s.period[(t - s.preperiod.size()) % s.period.size()];
}

}  // namespace carpet
