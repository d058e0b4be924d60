#include "lindiff/form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lindiff {

void validate(const DiffusionSpec& spec) {
    validate(spec.scale);
    validate(spec.speed);
    validate(spec.killing);
    if (!is_fully_supported(spec.speed, spec.domain))
        throw InvalidArgument("DiffusionSpec: speed measure must be fully supported on the domain");
    if (!is_fully_supported(spec.scale.ds, spec.domain))
        throw InvalidArgument("DiffusionSpec: scale measure must be fully supported on the domain");
}

double interior_probe(const Interval& domain) {
    if (domain.is_bounded()) return 0.5 * (domain.lo + domain.hi);
    if (std::isfinite(domain.lo)) return domain.lo + 1.0;
    if (std::isfinite(domain.hi)) return domain.hi - 1.0;
    return 0.0;
}

double PiecewiseConstant::at(double x) const {
    std::size_t i = 0;
    while (i < breakpoints.size() && x >= breakpoints[i]) ++i;
    return values[i];
}

bool PiecewiseConstant::is_zero() const {
    for (double v : values)
        if (v != 0.0) return false;
    return true;
}

void validate(const PiecewiseConstant& pc) {
    if (pc.values.size() != pc.breakpoints.size() + 1)
        throw InvalidArgument("PiecewiseConstant: values must be breakpoints+1 long");
    for (std::size_t i = 0; i + 1 < pc.breakpoints.size(); ++i)
        if (!(pc.breakpoints[i] < pc.breakpoints[i + 1]))
            throw InvalidArgument("PiecewiseConstant: breakpoints must be strictly increasing");
    for (double b : pc.breakpoints)
        if (!std::isfinite(b)) throw InvalidArgument("PiecewiseConstant: breakpoints must be finite");
    for (double v : pc.values)
        if (!std::isfinite(v)) throw InvalidArgument("PiecewiseConstant: values must be finite");
}

namespace {

// Certified integral of a piecewise-constant function against one measure
// component over J. Zero-valued pieces contribute nothing even against
// infinite mass; a nonzero piece against infinite mass is +-inf.
Bounds pc_integral(const MeasureComponent& comp, const PiecewiseConstant& pc, const Interval& J,
                   double tol) {
    Bounds total = Bounds::exact(0.0);
    double lo = J.lo;
    bool lo_inc = J.lo_included;
    std::size_t piece = 0;
    // Walk the refinement of J by pc's breakpoints.
    std::vector<double> cuts;
    for (double b : pc.breakpoints)
        if (b > J.lo && b < J.hi) cuts.push_back(b);
    cuts.push_back(J.hi);
    while (piece < pc.breakpoints.size() && pc.breakpoints[piece] <= J.lo) ++piece;
    double denom = static_cast<double>(cuts.size());
    for (double hi : cuts) {
        double v = pc.values[piece];
        bool hi_inc = (hi == J.hi) ? J.hi_included : false;
        if (v != 0.0) {
            Bounds m = mass_bounds(comp, Interval{lo, hi, lo_inc, hi_inc}, tol / denom);
            if (!m.is_finite()) return Bounds::exact(v > 0 ? kInf : -kInf);
            total += m.scaled(v);
        }
        lo = hi;
        lo_inc = !hi_inc;
        ++piece;
    }
    return total;
}

PiecewiseConstant pc_square(const PiecewiseConstant& pc) {
    PiecewiseConstant out = pc;
    for (double& v : out.values) v = v * v;
    return out;
}

PiecewiseConstant pc_product(const PiecewiseConstant& a, const PiecewiseConstant& b) {
    PiecewiseConstant out;
    std::vector<double> cuts = a.breakpoints;
    cuts.insert(cuts.end(), b.breakpoints.begin(), b.breakpoints.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    out.breakpoints = cuts;
    out.values.resize(cuts.size() + 1);
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
        double probe;
        if (cuts.empty())
            probe = 0.0;
        else if (i == 0)
            probe = cuts.front() - 1.0;
        else if (i == cuts.size())
            probe = cuts.back() + 1.0;
        else
            probe = 0.5 * (cuts[i - 1] + cuts[i]);
        out.values[i] = a.at(probe) * b.at(probe);
    }
    return out;
}

}  // namespace

void validate_form(const ScaleFunction& scale, const FormFunction& u) {
    if (u.coefficients.size() != scale.ds.components.size())
        throw InvalidArgument("FormFunction: one coefficient function per scale component required");
    if (!std::isfinite(u.base_x) || !std::isfinite(u.base_val))
        throw InvalidArgument("FormFunction: base point must be finite");
    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        validate(u.coefficients[i]);
        Bounds sq =
            pc_integral(scale.ds.components[i], pc_square(u.coefficients[i]), Interval::whole_line(), 1.0);
        if (!sq.is_finite())
            throw InvalidArgument("FormFunction: coefficient not square-integrable against its component");
    }
}

Bounds form_eval_bounds(const ScaleFunction& scale, const FormFunction& u, double x, double tol) {
    Bounds total = Bounds::exact(u.base_val);
    if (x == u.base_x) return total;
    const bool forward = x > u.base_x;
    Interval range = forward ? Interval{u.base_x, x, false, false} : Interval{x, u.base_x, false, false};
    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        Bounds part = pc_integral(scale.ds.components[i], u.coefficients[i], range,
                                  tol / static_cast<double>(u.coefficients.size()));
        total += forward ? part : part.scaled(-1.0);
    }
    return total;
}

FormFunction scale_as_form(const ScaleFunction& scale) {
    FormFunction u;
    u.base_x = scale.base_x;
    u.base_val = scale.base_val;
    u.coefficients.assign(scale.ds.components.size(), PiecewiseConstant::constant(1.0));
    return u;
}

TriBool regular_boundary(const DiffusionSpec& spec, Side side) {
    const double a = spec.domain.endpoint(side);
    if (spec.domain.endpoint_included(side)) return TriBool::No;  // a in I
    Bounds sa = eval_bounds(spec.scale, a, 1e-9);
    if (!sa.is_finite()) return TriBool::No;  // s(a) = -inf / +inf
    const double c = interior_probe(spec.domain);
    Interval near = side == Side::Left ? Interval{a, c, false, false} : Interval{c, a, false, false};
    Bounds mk = mass_bounds(spec.speed, near, 1.0) + mass_bounds(spec.killing, near, 1.0);
    return mk.is_finite() ? TriBool::Yes : TriBool::No;
}

namespace {

bool all_lebesgue(const RadonMeasure& m) {
    for (const auto& c : m.components)
        if (!std::holds_alternative<LebesgueDensity>(c)) return false;
    return true;
}

// Exact int u*v dk for fully piecewise data: u and v are piecewise linear in
// x, so each refined cell integrates a quadratic in closed form.
Bounds exact_diffuse_killing(const ScaleFunction& scale, const FormFunction& u,
                             const FormFunction& v, const RadonMeasure& k,
                             const Interval& window) {
    std::vector<double> cuts{window.lo, window.hi};
    auto add_cut = [&](double x) {
        if (x > window.lo && x < window.hi) cuts.push_back(x);
    };
    for (const auto& c : k.components)
        for (double b : std::get<LebesgueDensity>(c).breakpoints) add_cut(b);
    for (const auto& c : scale.ds.components)
        for (double b : std::get<LebesgueDensity>(c).breakpoints)
            if (std::isfinite(b)) add_cut(b);
    for (const FormFunction* f : {&u, &v})
        for (const auto& pc : f->coefficients)
            for (double b : pc.breakpoints) add_cut(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto density_sum = [&](const RadonMeasure& m, double probe) {
        double total = 0.0;
        for (const auto& c : m.components) {
            const auto& d = std::get<LebesgueDensity>(c);
            for (std::size_t i = 0; i < d.values.size(); ++i)
                if (d.breakpoints[i] <= probe && probe < d.breakpoints[i + 1]) total += d.values[i];
        }
        return total;
    };
    auto slope_of = [&](const FormFunction& f, double probe) {
        double slope = 0.0;
        for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
            const auto& d = std::get<LebesgueDensity>(scale.ds.components[i]);
            double dens = 0.0;
            for (std::size_t kk = 0; kk < d.values.size(); ++kk)
                if (d.breakpoints[kk] <= probe && probe < d.breakpoints[kk + 1]) dens = d.values[kk];
            slope += f.coefficients[i].at(probe) * dens;
        }
        return slope;
    };

    Bounds total = Bounds::exact(0.0);
    Bounds u_left = form_eval_bounds(scale, u, cuts.front(), 1e-15);
    Bounds v_left = form_eval_bounds(scale, v, cuts.front(), 1e-15);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double L = cuts[i + 1] - cuts[i];
        double probe = 0.5 * (cuts[i] + cuts[i + 1]);
        double kval = density_sum(k, probe);
        double su = slope_of(u, probe), sv = slope_of(v, probe);
        if (kval != 0.0) {
            // int_0^L (u0 + su t)(v0 + sv t) dt, with exact endpoint values
            Bounds term = (u_left * v_left).scaled(L) +
                          (u_left.scaled(sv) + v_left.scaled(su)).scaled(0.5 * L * L) +
                          Bounds::exact(su * sv * L * L * L / 3.0);
            total += term.scaled(kval);
        }
        u_left += Bounds::exact(su * L);
        v_left += Bounds::exact(sv * L);
    }
    return total;
}

// Certified bracket of int u*v dk over a bounded window by dyadic refinement;
// u and v are bracketed on each cell through their movement bounds.
Bounds killing_energy_window(const ScaleFunction& scale, const FormFunction& u,
                             const FormFunction& v, const RadonMeasure& k, const Interval& window,
                             double tol) {
    if (all_lebesgue(scale.ds) && all_lebesgue(k))
        return exact_diffuse_killing(scale, u, v, k, window);
    struct Cell {
        double lo, hi;
        double budget;
        int depth;
    };
    auto movement = [&](const FormFunction& f, const Interval& cell) {
        Bounds mv = Bounds::exact(0.0);
        for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
            PiecewiseConstant pos = f.coefficients[i], neg = f.coefficients[i];
            for (double& val : pos.values) val = std::max(val, 0.0);
            for (double& val : neg.values) val = std::min(val, 0.0);
            mv += pc_integral(scale.ds.components[i], pos, cell, 1e-3) +
                  pc_integral(scale.ds.components[i], neg, cell, 1e-3);
        }
        return mv;
    };
    auto range_on = [&](const FormFunction& f, double lo, double hi, double tl) {
        Bounds fl = form_eval_bounds(scale, f, lo, tl);
        Interval cell{lo, hi, true, true};
        Bounds mv = movement(f, cell);
        return Bounds{fl.lo + std::min(mv.lo, 0.0), fl.hi + std::max(mv.hi, 0.0)};
    };

    Bounds total = Bounds::exact(0.0);
    int cells_left = 4000;  // first-order refinement: cap the work, keep soundness
    std::vector<Cell> stack{{window.lo, window.hi, tol, 0}};
    while (!stack.empty()) {
        Cell cell = stack.back();
        stack.pop_back();
        Interval cint{cell.lo, cell.hi, cell.lo == window.lo && window.lo_included,
                      cell.hi == window.hi && window.hi_included};
        Bounds km = mass_bounds(k, cint, 0.1 * cell.budget);
        if (km.hi == 0.0) continue;
        Bounds ur = range_on(u, cell.lo, cell.hi, 0.1 * cell.budget);
        Bounds vr = range_on(v, cell.lo, cell.hi, 0.1 * cell.budget);
        Bounds contrib = (ur * vr) * km;
        --cells_left;
        if (contrib.width() <= cell.budget || cell.depth >= 36 || cells_left <= 0 ||
            !(cell.hi - cell.lo > 1e-13)) {
            total += contrib;
            continue;
        }
        double mid = 0.5 * (cell.lo + cell.hi);
        stack.push_back({cell.lo, mid, 0.5 * cell.budget, cell.depth + 1});
        stack.push_back({mid, cell.hi, 0.5 * cell.budget, cell.depth + 1});
    }
    return total;
}

// Finite reach of a measure: a bounded interval outside which only
// zero-coefficient regions matter, plus a flag for unbounded structure.
struct Reach {
    double lo = 0.0, hi = 0.0;
    bool lo_unbounded = false, hi_unbounded = false;
};

Reach measure_reach(const RadonMeasure& m) {
    Reach r;
    bool first = true;
    auto extend = [&](double a, double b) {
        if (first) {
            r.lo = a;
            r.hi = b;
            first = false;
        } else {
            r.lo = std::min(r.lo, a);
            r.hi = std::max(r.hi, b);
        }
    };
    for (const auto& c : m.components) {
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            for (std::size_t i = 0; i < d->values.size(); ++i) {
                if (d->values[i] == 0.0) continue;
                if (std::isinf(d->breakpoints[i])) r.lo_unbounded = true;
                if (std::isinf(d->breakpoints[i + 1])) r.hi_unbounded = true;
                extend(std::isfinite(d->breakpoints[i]) ? d->breakpoints[i] : 0.0,
                       std::isfinite(d->breakpoints[i + 1]) ? d->breakpoints[i + 1] : 0.0);
            }
        } else if (const auto* a = std::get_if<Atom>(&c)) {
            extend(a->location, a->location);
        } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
            extend(cc->support.lo, cc->support.hi);
        } else {
            const auto& rw = std::get<RationalWindows>(c);
            int n = rw.count_cutoff.value_or(kMaxRationalWindows);
            for (const Interval& w : rational_windows(n, rw.signed_enumeration))
                extend(w.lo, w.hi);
            if (!rw.count_cutoff) {
                r.hi_unbounded = true;  // windows reach arbitrarily far right
                if (rw.signed_enumeration) r.lo_unbounded = true;
            }
        }
    }
    if (first) {
        r.lo = -1.0;
        r.hi = 1.0;
    }
    return r;
}

}  // namespace

Approx energy(const DiffusionSpec& spec, const FormFunction& u, const FormFunction& v, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("energy: tol must be positive");
    validate_form(spec.scale, u);
    validate_form(spec.scale, v);

    // The form lives on the domain: coefficient behavior outside I does not
    // enter E(u, v).
    Bounds total = Bounds::exact(0.0);
    const double tol_ds = is_zero_measure(spec.killing) ? tol : 0.5 * tol;
    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        PiecewiseConstant prod = pc_product(u.coefficients[i], v.coefficients[i]);
        total += pc_integral(spec.scale.ds.components[i], prod, spec.domain,
                             tol_ds / static_cast<double>(u.coefficients.size()));
    }
    if (!is_zero_measure(spec.killing)) {
        // Atoms are exact; diffuse killing components go through refinement.
        RadonMeasure diffuse;
        double tol_k = 0.5 * tol;
        for (const auto& c : spec.killing.components) {
            if (const auto* a = std::get_if<Atom>(&c)) {
                if (!spec.domain.contains(a->location)) continue;
                Bounds uu = form_eval_bounds(spec.scale, u, a->location, 0.25 * tol_k);
                Bounds vv = form_eval_bounds(spec.scale, v, a->location, 0.25 * tol_k);
                total += (uu * vv).scaled(a->mass);
            } else {
                diffuse.components.push_back(c);
            }
        }
        if (!diffuse.components.empty()) {
            Reach r = measure_reach(diffuse);
            double lo = std::max(r.lo, spec.domain.lo), hi = std::min(r.hi, spec.domain.hi);
            if ((r.lo_unbounded && !std::isfinite(spec.domain.lo)) ||
                (r.hi_unbounded && !std::isfinite(spec.domain.hi)))
                throw UnsupportedOperation("energy: diffuse killing with unbounded reach");
            if (r.lo_unbounded) lo = spec.domain.lo;
            if (r.hi_unbounded) hi = spec.domain.hi;
            if (hi > lo)
                total += killing_energy_window(spec.scale, u, v, diffuse,
                                               Interval{lo, hi, spec.domain.lo_included,
                                                        spec.domain.hi_included},
                                               0.5 * tol_k);
        }
    }
    return total.to_approx();
}

namespace {

struct MergedDensity {
    std::vector<double> cuts;    // refined grid, may start/end at +-inf
    std::vector<double> values;  // size cuts.size()-1
};

MergedDensity merge_lebesgue(const RadonMeasure& canonical) {
    MergedDensity out;
    for (const auto& c : canonical.components) {
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            out.cuts = d->breakpoints;
            out.values = d->values;
        }
    }
    return out;
}

double density_value_at(const MergedDensity& d, double probe) {
    for (std::size_t i = 0; i < d.values.size(); ++i)
        if (d.cuts[i] <= probe && probe < d.cuts[i + 1]) return d.values[i];
    return 0.0;
}

double probe_of(double a, double b) {
    if (std::isinf(a) && std::isinf(b)) return 0.0;
    if (std::isinf(a)) return b - 1.0;
    if (std::isinf(b)) return a + 1.0;
    return 0.5 * (a + b);
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        default: return "unsupported";
    }
}

VerdictReport is_regular_subspace(const DiffusionSpec& sub, const DiffusionSpec& sup) {
    if (!(sub.domain == sup.domain)) throw MismatchedBase("is_regular_subspace: domains differ");
    if (!measures_equal(sub.speed, sup.speed))
        throw MismatchedBase("is_regular_subspace: speed measures differ");
    if (!measures_equal(sub.killing, sup.killing)) return {Verdict::No, "killing measures differ"};

    RadonMeasure cs = canonical_measure(sub.scale.ds);
    RadonMeasure cp = canonical_measure(sup.scale.ds);

    // Lebesgue part: density of d(sub.s) against d(sup.s) must be 0 or 1 a.e.
    MergedDensity dsub = merge_lebesgue(cs), dsup = merge_lebesgue(cp);
    std::vector<double> cuts = dsub.cuts;
    cuts.insert(cuts.end(), dsup.cuts.begin(), dsup.cuts.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double probe = probe_of(cuts[i], cuts[i + 1]);
        double f2 = density_value_at(dsub, probe);
        double f1 = density_value_at(dsup, probe);
        if (f2 != 0.0 && f2 != f1) {
            std::ostringstream os;
            os << "Lebesgue density " << f2 << " vs " << f1 << " near x = " << probe
               << " is neither 0 nor the superspace density";
            return {Verdict::No, os.str()};
        }
    }

    // Cantor copies of sub must appear identically in sup.
    for (const auto& c : cs.components) {
        const auto* cc = std::get_if<CantorCopy>(&c);
        if (!cc) continue;
        bool matched = false, overlapping = false;
        for (const auto& p : cp.components) {
            const auto* pp = std::get_if<CantorCopy>(&p);
            if (!pp) continue;
            if (pp->support == cc->support) {
                if (pp->weight == cc->weight) {
                    matched = true;
                } else {
                    std::ostringstream os;
                    os << "Cantor copy on [" << cc->support.lo << ", " << cc->support.hi
                       << "] has singular density " << cc->weight / pp->weight << " (not 0 or 1)";
                    return {Verdict::No, os.str()};
                }
            } else if (std::max(pp->support.lo, cc->support.lo) <
                       std::min(pp->support.hi, cc->support.hi)) {
                overlapping = true;
            }
        }
        if (matched) continue;
        if (overlapping)
            return {Verdict::Unsupported, "overlapping non-identical Cantor copies"};
        return {Verdict::No, "Cantor part of the candidate is not dominated by the superspace scale"};
    }

    // Rational windows: identical, a prefix (smaller cutoff), or absent.
    for (const auto& c : cs.components) {
        const auto* rw = std::get_if<RationalWindows>(&c);
        if (!rw) continue;
        bool ok = false, mixed_sign = false;
        for (const auto& p : cp.components) {
            const auto* pw = std::get_if<RationalWindows>(&p);
            if (!pw) continue;
            if (pw->signed_enumeration != rw->signed_enumeration) {
                mixed_sign = true;
                continue;
            }
            bool sup_unbounded = !pw->count_cutoff;
            if (sup_unbounded && !rw->count_cutoff) ok = true;
            if (sup_unbounded && rw->count_cutoff) ok = true;  // prefix of the full cover
            if (!sup_unbounded && rw->count_cutoff && *rw->count_cutoff <= *pw->count_cutoff)
                ok = true;
        }
        if (ok) continue;
        if (mixed_sign)
            return {Verdict::Unsupported, "rational windows with mismatched signed enumerations"};
        return {Verdict::No, "rational-window part of the candidate is not dominated"};
    }

    return {Verdict::Yes, ""};
}

DiffusionSpec subspace_from_set(const DiffusionSpec& sup, const IntervalSet& A) {
    DiffusionSpec out = sup;
    out.scale = restrict_scale(sup.scale, A, sup.domain);
    return out;
}

DiffusionSpec subspace_from_set(const DiffusionSpec& sup, const ScaleRestriction& A) {
    DiffusionSpec out = sup;
    out.scale = restrict_scale(sup.scale, A, sup.domain);
    return out;
}

}  // namespace lindiff
