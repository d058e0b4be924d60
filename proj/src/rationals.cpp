#include "lindiff/rationals.hpp"

#include <cmath>
#include <numeric>

namespace lindiff {

namespace {

// Appends the block p+q == s in order of increasing numerator q.
void append_block(std::int64_t s, std::vector<Rational>& out) {
    for (std::int64_t q = 1; q < s; ++q) {
        std::int64_t p = s - q;
        if (std::gcd(p, q) == 1) out.push_back(Rational{q, p});
    }
}

}  // namespace

std::vector<Rational> rational_prefix(int n) {
    if (n < 0) throw InvalidArgument("rational_prefix: n must be >= 0");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t s = 2; static_cast<int>(out.size()) < n; ++s) append_block(s, out);
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Rational enumerate_rationals(int n) {
    if (n < 1) throw InvalidArgument("enumerate_rationals: n must be >= 1");
    return rational_prefix(n).back();
}

double rational_window_center(int n, bool signed_enumeration) {
    if (n < 1) throw InvalidArgument("rational_window_center: n must be >= 1");
    if (!signed_enumeration) return enumerate_rationals(n).value();
    int k = (n + 1) / 2;
    double r = enumerate_rationals(k).value();
    return (n % 2 == 1) ? r : -r;
}

std::vector<Interval> rational_windows(int count, bool signed_enumeration) {
    if (count < 0) throw InvalidArgument("rational_windows: count must be >= 0");
    if (count > 44)
        throw InvalidArgument("rational_windows: count exceeds double-precision window resolution");
    int base = signed_enumeration ? (count + 1) / 2 : count;
    std::vector<Rational> rs = rational_prefix(base);
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 1; n <= count; ++n) {
        double center;
        if (signed_enumeration) {
            double r = rs[static_cast<std::size_t>((n + 1) / 2 - 1)].value();
            center = (n % 2 == 1) ? r : -r;
        } else {
            center = rs[static_cast<std::size_t>(n - 1)].value();
        }
        double half = std::ldexp(1.0, -(n + 1));
        out.push_back(Interval::open(center - half, center + half));
    }
    return out;
}

}  // namespace lindiff
