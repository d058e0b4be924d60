#include "lindiff/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace lindiff {

const char* to_string(BoundaryKlass k) {
    switch (k) {
        case BoundaryKlass::First: return "first";
        case BoundaryKlass::Second: return "second";
        default: return "third";
    }
}

namespace {

// |s(x) - s(a)| via the Stieltjes mass between the endpoint and x; avoids the
// inf - inf trap of subtracting limits.
Bounds scale_gap(const DiffusionSpec& spec, Side side, double x, double tol) {
    double a = spec.domain.endpoint(side);
    return mass_between(spec.scale.ds, a, x, tol);
}

// Geometric tail bounds for rational-window components, from r_n <= n: window
// n lies within [-(n+1), n+1] and has length 2^-n.
double rw_first_unreached_index(const RationalWindows& rw, double T, Side tail_side) {
    double reach = std::fabs(T);
    if (!rw.signed_enumeration) {
        if (tail_side == Side::Left && T <= 0.0) return kInf;  // no windows below 0
        return std::max(1.0, std::ceil(reach - 1.0));
    }
    return std::max(1.0, 2.0 * std::floor(reach) - 3.0);
}

double rw_tail_mass_bound(const RationalWindows& rw, double T, Side tail_side) {
    double N = rw_first_unreached_index(rw, T, tail_side);
    if (N == kInf) return 0.0;
    return std::ldexp(2.0, -static_cast<int>(std::min(N, 1000.0)));  // sum 2^-n, n >= N
}

// Upper bound of the weighted tail  int_{tail beyond T} |T - y| d(comp)  for
// scale components; only rational windows reach arbitrarily far.
double rw_weighted_tail_bound(const RationalWindows& rw, double T, Side tail_side) {
    double N = rw_first_unreached_index(rw, T, tail_side);
    if (N == kInf) return 0.0;
    int n = static_cast<int>(std::min(N, 1000.0));
    // sum_{k>=n} (|T| + k + 1) 2^-k  =  (|T| + 1) 2^{1-n} + (n+1) 2^{1-n}
    return (std::fabs(T) + n + 2.0) * std::ldexp(2.0, -n);
}

// Outermost breakpoint of every finite structural feature on the given side,
// so the chosen tail split T lies beyond all of them.
double structural_reach(const DiffusionSpec& spec, Side side) {
    double reach = 0.0;
    auto extend = [&](double v) {
        if (std::isfinite(v)) reach = std::max(reach, std::fabs(v));
    };
    for (const RadonMeasure* m : {&spec.speed, &spec.killing, &spec.scale.ds}) {
        for (const auto& c : m->components) {
            if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
                for (double b : d->breakpoints) extend(b);
            } else if (const auto* a = std::get_if<Atom>(&c)) {
                extend(a->location);
            } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
                extend(cc->support.lo);
                extend(cc->support.hi);
            }
        }
    }
    (void)side;
    return reach;
}

// Density of the speed measure's unbounded piece toward the given side.
double unbounded_speed_density(const DiffusionSpec& spec, Side side) {
    double v = 0.0;
    for (const auto& c : spec.speed.components) {
        const auto* d = std::get_if<LebesgueDensity>(&c);
        if (!d) continue;
        if (side == Side::Left && std::isinf(d->breakpoints.front())) v += d->values.front();
        if (side == Side::Right && std::isinf(d->breakpoints.back())) v += d->values.back();
    }
    return v;
}

// Certified upper bound of  int_{(a,T)} |s(x)-s(a)| m(dx)  for an infinite
// endpoint a, with T beyond all finite structure. Both dissipativity routes
// close their improper tails through this quantity.
double improper_tail_bound(const DiffusionSpec& spec, Side side, double T, double tol) {
    double bound = 0.0;
    double v = unbounded_speed_density(spec, side);
    if (v > 0.0) {
        // v * int (|T - y|) ds(y) over the tail; only window components reach.
        for (const auto& c : spec.scale.ds.components)
            if (const auto* rw = std::get_if<RationalWindows>(&c))
                bound += v * rw_weighted_tail_bound(*rw, T, side);
    }
    // Speed mass carried past T by window components of m, against the full
    // scale gap at T.
    double rw_speed_tail = 0.0;
    for (const auto& c : spec.speed.components)
        if (const auto* rw = std::get_if<RationalWindows>(&c))
            rw_speed_tail += rw_tail_mass_bound(*rw, T, side);
    if (rw_speed_tail > 0.0) bound += rw_speed_tail * scale_gap(spec, side, T, tol).hi;
    return bound;
}

}  // namespace

Bounds dissipative_integral(const DiffusionSpec& spec, Side side, DissipativityRoute route,
                            double c, double tol) {
    if (!spec.domain.interior().contains(c) && !spec.domain.contains(c))
        throw InvalidArgument("dissipative_integral: probe c must lie in the domain");
    const double a = spec.domain.endpoint(side);
    const double eval_tol = 0.1 * tol;

    auto integrand_direct = [&](double x) { return scale_gap(spec, side, x, eval_tol); };
    auto integrand_via_m = [&](double x) {
        return mass_between(spec.speed, x, c, eval_tol);
    };

    // f increases toward the endpoint for ViaM and away from it for Direct.
    const bool direct = route == DissipativityRoute::Direct;
    const bool increasing = (side == Side::Left) == direct;
    const RadonMeasure& mu = direct ? spec.speed : spec.scale.ds;
    std::function<Bounds(double)> f =
        direct ? std::function<Bounds(double)>(integrand_direct)
               : std::function<Bounds(double)>(integrand_via_m);

    if (std::isfinite(a)) {
        Interval J = a <= c ? Interval{a, c, false, false} : Interval{c, a, false, false};
        return integrate_monotone(mu, J, f, increasing, tol);
    }

    // Improper endpoint: integrate expanding bodies and close the remaining
    // tail with the component-wise bound.
    Bounds total = Bounds::exact(0.0);
    double step = std::max(1.0, structural_reach(spec, side) + std::fabs(c));
    double inner = c;
    double tail_bound = kInf;
    for (int k = 0; k < 48; ++k) {
        double outer = side == Side::Left ? c - step * std::ldexp(1.0, k)
                                          : c + step * std::ldexp(1.0, k);
        Interval body = outer <= inner ? Interval{outer, inner, false, false}
                                       : Interval{inner, outer, false, false};
        total += integrate_monotone(mu, body, f, increasing, 0.25 * tol * std::ldexp(1.0, -k));
        inner = outer;
        double h = improper_tail_bound(spec, side, outer, eval_tol);
        if (route == DissipativityRoute::ViaM) {
            // int_{(a,T)} m((y,c)) ds(y) <= H(T) + m([T,c]) * ds((a,T)).
            Bounds body_mass = mass_between(spec.speed, outer, c, eval_tol);
            Bounds edge = mass_bounds(spec.speed, Interval::closed(outer, outer), eval_tol) +
                          mass_bounds(spec.speed, Interval::closed(c, c), eval_tol);
            h += (body_mass.hi + edge.hi) * scale_gap(spec, side, outer, eval_tol).hi;
        }
        tail_bound = h;
        if (tail_bound <= 0.25 * tol) break;
    }
    total.hi += tail_bound;
    return total;
}

BoundaryClass classify(const DiffusionSpec& spec, Side side) {
    BoundaryClass out;
    if (spec.domain.endpoint_included(side)) {
        out.klass = BoundaryKlass::First;
        out.dissipative = TriBool::No;
        return out;
    }
    Bounds sa = eval_bounds(spec.scale, spec.domain.endpoint(side), 1e-9);
    if (!sa.is_finite()) {
        out.klass = BoundaryKlass::Second;
        out.dissipative = TriBool::No;
        return out;
    }
    out.klass = BoundaryKlass::Third;
    out.dissipative = is_dissipative(spec, side, 1e-9);
    return out;
}

namespace {

TriBool dissipative_verdict(const DiffusionSpec& spec, Side side, DissipativityRoute route,
                            double tol) {
    if (spec.domain.endpoint_included(side)) return TriBool::No;
    Bounds sa = eval_bounds(spec.scale, spec.domain.endpoint(side), 1e-9);
    if (!sa.is_finite()) return TriBool::No;  // second class: conservative
    for (double t = std::max(tol, 1e-3); t >= 0.5e-12; t *= 0.1) {
        Bounds val = dissipative_integral(spec, side, route, interior_probe(spec.domain), t);
        if (std::isfinite(val.hi)) return TriBool::Yes;
        if (val.lo > 1e15) return TriBool::No;  // certified lower bound diverges
    }
    return TriBool::Unknown;
}

}  // namespace

TriBool is_dissipative(const DiffusionSpec& spec, Side side, double tol) {
    return dissipative_verdict(spec, side, DissipativityRoute::Direct, tol);
}

TriBool is_dissipative_via_M(const DiffusionSpec& spec, Side side, double tol) {
    return dissipative_verdict(spec, side, DissipativityRoute::ViaM, tol);
}

std::vector<std::pair<double, double>> limit_MS(const DiffusionSpec& spec, Side side,
                                                int sequence_length) {
    if (sequence_length < 1) throw InvalidArgument("limit_MS: sequence_length must be >= 1");
    if (is_dissipative(spec, side, 1e-9) != TriBool::Yes)
        throw InvalidArgument("limit_MS: endpoint is not dissipative");
    const double a = spec.domain.endpoint(side);
    const double c = interior_probe(spec.domain);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(sequence_length));
    for (int k = 1; k <= sequence_length; ++k) {
        double x;
        if (std::isfinite(a)) {
            x = a + (c - a) * std::ldexp(1.0, -k);
        } else {
            x = side == Side::Left ? c - std::ldexp(1.0, k) : c + std::ldexp(1.0, k);
        }
        double M = mass_between(spec.speed, x, c, 1e-12).mid();
        double gap = scale_gap(spec, side, x, 1e-12).mid();
        out.emplace_back(x, M * gap);
    }
    return out;
}

TriBool is_recurrent(const DiffusionSpec& spec) {
    if (!is_zero_measure(spec.killing)) return TriBool::No;
    for (Side side : {Side::Left, Side::Right})
        if (classify(spec, side).klass == BoundaryKlass::Third) return TriBool::No;
    return TriBool::Yes;
}

TriBool is_conservative(const DiffusionSpec& spec) {
    if (!is_zero_measure(spec.killing)) return TriBool::No;
    TriBool verdict = TriBool::Yes;
    for (Side side : {Side::Left, Side::Right})
        verdict = tri_and(verdict, tri_not(classify(spec, side).dissipative));
    return verdict;
}

Approx mean_exit_time(const DiffusionSpec& spec, double a, double x, double b, double tol) {
    if (!(a < x && x < b)) throw InvalidArgument("mean_exit_time: need a < x < b");
    if (!spec.domain.closure().contains(a) || !spec.domain.closure().contains(b))
        throw InvalidArgument("mean_exit_time: [a,b] must lie in the closure of the domain");
    if (!(tol > 0.0)) throw InvalidArgument("mean_exit_time: tol must be positive");

    const double eval_tol = std::min(1e-12, 0.05 * tol);
    Bounds left_gap_x = mass_between(spec.scale.ds, a, x, eval_tol);   // s(x)-s(a)
    Bounds right_gap_x = mass_between(spec.scale.ds, x, b, eval_tol);  // s(b)-s(x)
    Bounds D = left_gap_x + right_gap_x;
    if (!(D.lo > 0.0)) throw InvalidArgument("mean_exit_time: scale gap not certifiably positive");
    Bounds invD{1.0 / D.hi, 1.0 / D.lo};

    auto left_f = [&](double z) {
        return (mass_between(spec.scale.ds, a, z, eval_tol) * right_gap_x * invD).scaled(2.0);
    };
    auto right_f = [&](double z) {
        return (mass_between(spec.scale.ds, z, b, eval_tol) * left_gap_x * invD).scaled(2.0);
    };
    Bounds left_part = integrate_monotone(spec.speed, Interval{a, x, false, true},
                                          std::function<Bounds(double)>(left_f), true, 0.5 * tol);
    Bounds right_part = integrate_monotone(spec.speed, Interval{x, b, false, false},
                                           std::function<Bounds(double)>(right_f), false, 0.5 * tol);
    return (left_part + right_part).to_approx();
}

}  // namespace lindiff
