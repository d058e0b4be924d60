#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lindiff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Side { Left, Right };

enum class TriBool { Yes, No, Unknown };

inline const char* to_string(TriBool t) {
    switch (t) {
        case TriBool::Yes: return "yes";
        case TriBool::No: return "no";
        default: return "unknown";
    }
}

inline TriBool tri_and(TriBool a, TriBool b) {
    if (a == TriBool::No || b == TriBool::No) return TriBool::No;
    if (a == TriBool::Yes && b == TriBool::Yes) return TriBool::Yes;
    return TriBool::Unknown;
}

inline TriBool tri_not(TriBool a) {
    if (a == TriBool::Yes) return TriBool::No;
    if (a == TriBool::No) return TriBool::Yes;
    return TriBool::Unknown;
}

/// A value with a certified absolute error bound. If `value` is +/-inf the
/// result is a certified infinite verdict and `error` is meaningless.
struct Approx {
    double value = 0.0;
    double error = 0.0;

    bool is_finite() const { return std::isfinite(value); }

    static Approx exact(double v) { return {v, 0.0}; }
    static Approx infinite(int sign) { return {sign >= 0 ? kInf : -kInf, 0.0}; }
};

/// Closed interval [lo, hi] guaranteed to contain the true value. The
/// workhorse of all certified quadrature in this library; Approx is the
/// public midpoint/halfwidth view of the same information.
struct Bounds {
    double lo = 0.0;
    double hi = 0.0;

    static Bounds exact(double v) { return {v, v}; }
    static Bounds of(double a, double b) { return a <= b ? Bounds{a, b} : Bounds{b, a}; }

    double mid() const {
        if (lo == -kInf && hi == kInf) return 0.0;
        if (hi == kInf) return kInf;
        if (lo == -kInf) return -kInf;
        return 0.5 * (lo + hi);
    }
    double width() const { return hi - lo; }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool certainly_positive() const { return lo > 0.0; }
    bool contains(double v) const { return lo <= v && v <= hi; }

    Bounds operator+(const Bounds& o) const { return {lo + o.lo, hi + o.hi}; }
    Bounds operator-(const Bounds& o) const { return {lo - o.hi, hi - o.lo}; }
    Bounds& operator+=(const Bounds& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    Bounds scaled(double c) const { return c >= 0 ? Bounds{c * lo, c * hi} : Bounds{c * hi, c * lo}; }

    Bounds operator*(const Bounds& o) const {
        const double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::fmin(std::fmin(a, b), std::fmin(c, d)), std::fmax(std::fmax(a, b), std::fmax(c, d))};
    }

    Bounds hull(const Bounds& o) const { return {std::fmin(lo, o.lo), std::fmax(hi, o.hi)}; }

    Approx to_approx() const {
        if (!is_finite()) {
            if (lo == kInf) return Approx::infinite(+1);
            if (hi == -kInf) return Approx::infinite(-1);
            if (std::isfinite(lo) || std::isfinite(hi)) {
                // Half-infinite bracket: report the infinite side only when
                // the finite side cannot pin a value.
                return {hi == kInf ? kInf : -kInf, kInf};
            }
            return {0.0, kInf};
        }
        return {mid(), 0.5 * width()};
    }

    static Bounds from_approx(const Approx& a) {
        if (!a.is_finite()) return Bounds::exact(a.value);
        return {a.value - a.error, a.value + a.error};
    }
};

/// Thrown on violated preconditions and malformed inputs.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an integral is certifiably divergent or undefined.
class NonIntegrable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation leaves the representable component algebra.
class UnsupportedOperation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lindiff
