#include "lindiff/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace lindiff {

namespace {

using u128 = unsigned __int128;

// Exact dyadic representation x = num / 2^p of a double in (0,1). Valid for
// x >= 2^-74 so that 3*num never overflows 128 bits during digit extraction.
struct DyadicFraction {
    u128 num;
    int p;
};

DyadicFraction decompose(double x) {
    int e = 0;
    double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
    auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
    u128 num = m;
    int p = 53 - e;
    while (p > 0 && (num & 1u) == 0) {
        num >>= 1;
        --p;
    }
    return {num, p};
}

// Next ternary digit of num/2^p; updates num in place to the remainder.
int next_digit(DyadicFraction& d) {
    d.num *= 3;
    int digit = static_cast<int>(d.num >> d.p);
    d.num -= static_cast<u128>(digit) << d.p;
    return digit;
}

double as_double(const DyadicFraction& d) {
    return static_cast<double>(d.num) / std::ldexp(1.0, d.p);
}

}  // namespace

Bounds cantor_bracket(double x, int depth) {
    depth = std::clamp(depth, 1, kMaxCantorDepth);
    if (!(x > 0.0)) return Bounds::exact(0.0);
    if (!(x < 1.0)) return Bounds::exact(1.0);

    // Tiny inputs: c(x) <= c(3^-(depth+1)) = 2^-(depth+1); the factor 0.5
    // absorbs the rounding of pow.
    const double tiny = 0.5 * std::pow(3.0, -(depth + 1));
    if (x < tiny) return Bounds{0.0, std::ldexp(1.0, -(depth + 1))};
    if (x > 1.0 - tiny) return Bounds{1.0 - std::ldexp(1.0, -(depth + 1)), 1.0};

    DyadicFraction d = decompose(x);
    double value_lo = 0.0;
    double scale = 1.0;
    for (int k = 0; k < depth; ++k) {
        if (d.num == 0) return Bounds::exact(value_lo);  // triadic cell endpoint
        int digit = next_digit(d);
        if (digit == 1) return Bounds::exact(value_lo + 0.5 * scale);  // plateau
        if (digit == 2) value_lo += 0.5 * scale;
        scale *= 0.5;
    }
    return Bounds{value_lo, value_lo + scale};
}

double cantor_function(double x, int depth) {
    return cantor_bracket(x, depth).mid();
}

Bounds cantor_integral_bracket(double t, int depth) {
    depth = std::clamp(depth, 1, kMaxCantorDepth);
    if (!(t > 0.0)) return Bounds::exact(0.0);
    if (!(t < 1.0)) return Bounds::exact(0.5);

    const double slop = 1e-13;  // covers double rounding of the accumulators
    const double tiny = 0.5 * std::pow(3.0, -(depth + 1));
    if (t < tiny) return Bounds{0.0, t * std::ldexp(1.0, -(depth + 1)) + slop};

    DyadicFraction d = decompose(t);
    double acc = 0.0;     // integral over full cells walked past so far
    double base = 0.0;    // c at the left endpoint of the current cell
    double vrange = 1.0;  // c-range across the current cell
    double len = 1.0;     // current cell length
    for (int k = 0; k < depth; ++k) {
        if (d.num == 0) return Bounds{acc - slop, acc + slop};
        int digit = next_digit(d);
        const double third = len / 3.0;
        const double plateau = base + 0.5 * vrange;
        // Mean of c over the left third: it rescales the full staircase into
        // the value range [base, base + vrange/2], so the mean is base + v/4.
        const double left_third_integral = third * (base + 0.25 * vrange);
        if (digit == 1) {
            // Full left third plus a partial plateau, both in closed form.
            acc += left_third_integral;
            acc += plateau * as_double(d) * third;
            return Bounds{acc - slop, acc + slop};
        }
        if (digit == 2) {
            acc += left_third_integral + third * plateau;
            base = plateau;
        }
        vrange *= 0.5;
        len = third;
    }
    const double w = as_double(d) * len;
    return Bounds{acc + base * w - slop, acc + (base + vrange) * w + slop};
}

}  // namespace lindiff
