#include <algorithm>
#include <cmath>
#include <sstream>

#include "lindiff/form.hpp"

namespace lindiff {

namespace {

struct PiecewiseDensity {
    std::vector<double> cuts;    // may start/end infinite
    std::vector<double> values;  // size cuts.size()-1; zero outside
};

double density_at(const PiecewiseDensity& d, double x) {
    for (std::size_t i = 0; i < d.values.size(); ++i)
        if (d.cuts[i] <= x && x < d.cuts[i + 1]) return d.values[i];
    return 0.0;
}

// Effective Lebesgue density of a component, when it has one.
std::optional<PiecewiseDensity> effective_density(const MeasureComponent& c) {
    if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
        return PiecewiseDensity{d->breakpoints, d->values};
    }
    if (const auto* rw = std::get_if<RationalWindows>(&c)) {
        if (!rw->count_cutoff) return std::nullopt;  // dense union, not piecewise
        IntervalSet cover = canonicalize(rational_windows(*rw->count_cutoff, rw->signed_enumeration));
        PiecewiseDensity out;
        for (const Interval& w : cover.pieces) {
            if (!out.cuts.empty()) {
                out.values.push_back(0.0);  // gap between windows
                out.cuts.push_back(w.lo);
            } else {
                out.cuts.push_back(w.lo);
            }
            out.values.push_back(1.0);
            out.cuts.push_back(w.hi);
        }
        return out;
    }
    return std::nullopt;
}

bool components_identical(const MeasureComponent& a, const MeasureComponent& b) {
    if (a.index() != b.index()) return false;
    if (const auto* da = std::get_if<LebesgueDensity>(&a)) {
        const auto& db = std::get<LebesgueDensity>(b);
        return da->breakpoints == db.breakpoints && da->values == db.values;
    }
    if (const auto* ca = std::get_if<CantorCopy>(&a)) {
        const auto& cb = std::get<CantorCopy>(b);
        return ca->support.lo == cb.support.lo && ca->support.hi == cb.support.hi &&
               ca->weight == cb.weight;
    }
    if (const auto* ra = std::get_if<RationalWindows>(&a)) {
        const auto& rb = std::get<RationalWindows>(b);
        return ra->count_cutoff == rb.count_cutoff &&
               ra->signed_enumeration == rb.signed_enumeration;
    }
    return false;
}

// Is the coefficient zero over the whole window (a.e.)?
bool coeff_zero_on(const PiecewiseConstant& pc, double lo, double hi) {
    std::vector<double> cuts{lo, hi};
    for (double b : pc.breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double probe = std::isinf(cuts[i])
                           ? (std::isinf(cuts[i + 1]) ? 0.0 : cuts[i + 1] - 1.0)
                           : (std::isinf(cuts[i + 1]) ? cuts[i] + 1.0 : 0.5 * (cuts[i] + cuts[i + 1]));
        if (pc.at(probe) != 0.0) return false;
    }
    return true;
}

struct RewriteResult {
    bool ok = false;
    Verdict fail_verdict = Verdict::No;
    std::string reason;
    FormFunction rewritten;
};

RewriteResult rewrite_over(const DiffusionSpec& spec, const ScaleFunction& u_scale,
                           const FormFunction& u) {
    RewriteResult res;
    const auto& tgt = spec.scale.ds.components;
    res.rewritten.base_x = u.base_x;
    res.rewritten.base_val = u.base_val;
    res.rewritten.coefficients.assign(tgt.size(), PiecewiseConstant::constant(0.0));

    // Indices of target components that carry an effective Lebesgue density,
    // plus their summed density (the absolutely continuous part of ds).
    std::vector<std::size_t> ac_targets;
    std::vector<PiecewiseDensity> ac_densities;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        if (auto d = effective_density(tgt[j])) {
            ac_targets.push_back(j);
            ac_densities.push_back(*d);
        }
    }
    auto ac_total_at = [&](double x) {
        double f = 0.0;
        for (const auto& d : ac_densities) f += density_at(d, x);
        return f;
    };

    auto add_pc = [&](std::size_t j, const PiecewiseConstant& pc) {
        PiecewiseConstant cur = res.rewritten.coefficients[j];
        std::vector<double> cuts = cur.breakpoints;
        cuts.insert(cuts.end(), pc.breakpoints.begin(), pc.breakpoints.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        PiecewiseConstant out;
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
            out.values[i] = cur.at(probe) + pc.at(probe);
        }
        res.rewritten.coefficients[j] = out;
    };

    // Rewrite an absolutely continuous contribution coeff * f_u dx over the
    // AC part of ds: the same coefficient coeff * f_u / f_total goes onto
    // every AC target (summing their densities reproduces du).
    auto rewrite_ac = [&](const PiecewiseConstant& coeff, const PiecewiseDensity& fu,
                          std::string& why) {
        std::vector<double> cuts;
        for (double b : coeff.breakpoints) cuts.push_back(b);
        for (double b : fu.cuts)
            if (std::isfinite(b)) cuts.push_back(b);
        for (const auto& d : ac_densities)
            for (double b : d.cuts)
                if (std::isfinite(b)) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        PiecewiseConstant out;
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
            double num = coeff.at(probe) * density_at(fu, probe);
            if (num == 0.0) {
                out.values[i] = 0.0;
                continue;
            }
            double den = ac_total_at(probe);
            if (den == 0.0) {
                why = "du has an absolutely continuous part not dominated by ds";
                return false;
            }
            out.values[i] = num / den;
        }
        for (std::size_t j : ac_targets) add_pc(j, out);
        return true;
    };

    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        const PiecewiseConstant& coeff = u.coefficients[i];
        if (coeff.is_zero()) continue;
        const MeasureComponent& src = u_scale.ds.components[i];

        // Identical component present in the target: carry the coefficient over.
        bool carried = false;
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            if (components_identical(src, tgt[j])) {
                add_pc(j, coeff);
                carried = true;
                break;
            }
        }
        if (carried) continue;

        if (const auto* cc = std::get_if<CantorCopy>(&src)) {
            if (coeff_zero_on(coeff, cc->support.lo, cc->support.hi)) continue;
            bool overlapping = false;
            bool matched = false;
            for (std::size_t j = 0; j < tgt.size(); ++j) {
                const auto* tc = std::get_if<CantorCopy>(&tgt[j]);
                if (!tc) continue;
                if (tc->support.lo == cc->support.lo && tc->support.hi == cc->support.hi) {
                    add_pc(j, [&] {
                        PiecewiseConstant scaled = coeff;
                        for (double& v : scaled.values) v *= cc->weight / tc->weight;
                        return scaled;
                    }());
                    matched = true;
                    break;
                }
                if (std::max(tc->support.lo, cc->support.lo) < std::min(tc->support.hi, cc->support.hi))
                    overlapping = true;
            }
            if (matched) continue;
            if (overlapping) {
                res.fail_verdict = Verdict::Unsupported;
                res.reason = "rewriting requires comparing non-identical overlapping Cantor copies";
                return res;
            }
            res.reason = "du has a Cantor component not dominated by ds";
            return res;
        }

        if (auto fu = effective_density(src)) {
            std::string why;
            if (!rewrite_ac(coeff, *fu, why)) {
                res.reason = why;
                return res;
            }
            continue;
        }

        // Unbounded rational windows with no identical counterpart: the dense
        // cover has no piecewise rewriting, whether or not ds dominates it.
        res.fail_verdict = Verdict::Unsupported;
        res.reason = "unbounded rational-window derivative cannot be rewritten in this algebra";
        return res;
    }
    res.ok = true;
    return res;
}

// Outermost coefficient values of u against components of unbounded reach.
bool has_nonvanishing_tail(const ScaleFunction& scale, const FormFunction& u, Side side) {
    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        const PiecewiseConstant& pc = u.coefficients[i];
        double edge_value = side == Side::Left ? pc.values.front() : pc.values.back();
        if (edge_value == 0.0) continue;
        const MeasureComponent& c = scale.ds.components[i];
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            double bp = side == Side::Left ? d->breakpoints.front() : d->breakpoints.back();
            double v = side == Side::Left ? d->values.front() : d->values.back();
            if (std::isinf(bp) && v != 0.0) return true;
            // A bounded density beyond the last coefficient breakpoint still
            // contributes, but only finitely; tails here mean infinite reach.
        } else if (const auto* rw = std::get_if<RationalWindows>(&c)) {
            if (!rw->count_cutoff && (side == Side::Right || rw->signed_enumeration)) return true;
        }
    }
    return false;
}

}  // namespace

namespace {

// Membership concerns u restricted to the domain: coefficient behavior
// outside I is irrelevant, so zero it out before rewriting. The base point
// must lie in the closure of I for the truncation to represent the same
// function there.
FormFunction truncate_to_domain(const FormFunction& u, const Interval& domain) {
    FormFunction out = u;
    for (PiecewiseConstant& pc : out.coefficients) {
        std::vector<double> bp = pc.breakpoints;
        if (std::isfinite(domain.lo)) bp.push_back(domain.lo);
        if (std::isfinite(domain.hi)) bp.push_back(domain.hi);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        PiecewiseConstant cut;
        cut.breakpoints = bp;
        cut.values.resize(bp.size() + 1);
        for (std::size_t i = 0; i <= bp.size(); ++i) {
            double probe;
            if (bp.empty())
                probe = 0.0;
            else if (i == 0)
                probe = bp.front() - 1.0;
            else if (i == bp.size())
                probe = bp.back() + 1.0;
            else
                probe = 0.5 * (bp[i - 1] + bp[i]);
            bool inside = probe > domain.lo && probe < domain.hi;
            cut.values[i] = inside ? pc.at(probe) : 0.0;
        }
        pc = cut;
    }
    return out;
}

}  // namespace

VerdictReport membership(const DiffusionSpec& spec, const ScaleFunction& u_scale,
                         const FormFunction& raw_u, MembershipVariant variant, double tol) {
    if (!spec.domain.closure().contains(raw_u.base_x))
        return {Verdict::Unsupported, "base point of u lies outside the domain closure"};
    // Truncate before validating: only u's restriction to the domain must
    // satisfy the square-integrability invariant.
    FormFunction u = truncate_to_domain(raw_u, spec.domain);
    validate_form(u_scale, u);

    RewriteResult rw = rewrite_over(spec, u_scale, u);
    if (!rw.ok) return {rw.fail_verdict, rw.reason};

    try {
        validate_form(spec.scale, rw.rewritten);
    } catch (const InvalidArgument&) {
        return {Verdict::No, "du/ds is not square-integrable against ds"};
    }

    // u in L2(m + k) over the domain. On a bounded-reach m+k a continuous u
    // of finite variation is always square-integrable; against an
    // infinite-mass tail the limit of u must vanish.
    RadonMeasure mk = spec.speed;
    mk.components.insert(mk.components.end(), spec.killing.components.begin(),
                         spec.killing.components.end());
    Bounds total_mass = mass_bounds(mk, spec.domain, 1.0);
    if (!total_mass.is_finite()) {
        for (Side side : {Side::Left, Side::Right}) {
            double endpoint = spec.domain.endpoint(side);
            if (std::isfinite(endpoint)) continue;  // no infinite tail inside I
            Interval tail = side == Side::Left ? Interval{-kInf, interior_probe(spec.domain), false, false}
                                               : Interval{interior_probe(spec.domain), kInf, false, false};
            if (mass_bounds(mk, tail, 1.0).is_finite()) continue;
            if (has_nonvanishing_tail(u_scale, u, side))
                return {Verdict::No, "u does not vanish against an infinite-mass tail of m+k"};
            Bounds limit = form_eval_bounds(u_scale, u, endpoint, tol);
            if (limit.lo > 0.0 || limit.hi < 0.0)
                return {Verdict::No, "u has a nonzero limit against an infinite-mass tail of m+k"};
            if (!(limit.lo == 0.0 && limit.hi == 0.0))
                return {Verdict::Unsupported,
                        "cannot certify the tail limit of u against an infinite-mass tail"};
        }
    }

    if (variant == MembershipVariant::ZeroBoundary) {
        for (Side side : {Side::Left, Side::Right}) {
            if (regular_boundary(spec, side) != TriBool::Yes) continue;
            double a = spec.domain.endpoint(side);
            Bounds ua = form_eval_bounds(u_scale, u, a, tol);
            if (ua.lo > 0.0 || ua.hi < 0.0) {
                std::ostringstream os;
                os << "u(" << (side == Side::Left ? "left" : "right")
                   << " endpoint) != 0 at a regular boundary";
                return {Verdict::No, os.str()};
            }
            if (!(ua.lo == 0.0 && ua.hi == 0.0))
                return {Verdict::Unsupported, "cannot certify u = 0 at a regular boundary"};
        }
    }
    return {Verdict::Yes, ""};
}

}  // namespace lindiff
