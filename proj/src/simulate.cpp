#include "lindiff/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace lindiff {

const char* to_string(Terminal t) {
    switch (t) {
        case Terminal::HitLeft: return "hit_left";
        case Terminal::HitRight: return "hit_right";
        case Terminal::Killed: return "killed";
        default: return "censored";
    }
}

namespace {

// splitmix64 with one independent stream per path. The initial state is the
// scrambled (seed, path) pair: feeding the raw arithmetic progression in
// directly would leave different paths walking shifted copies of the same
// output sequence.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed, std::uint64_t path) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (path + 0x632BE59BD9B4E019ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        state = z ^ (z >> 31);
    }
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool coin() { return (next() >> 63) != 0; }
};

struct Lattice {
    double A = 0.0, B = 0.0, h = 0.0;
    int N = 0;
    int j0 = 0;
    bool reflect_left = false, reflect_right = false;
    bool clamped_left = false, clamped_right = false;  // artificial window edge
    std::vector<double> dt;  // holding-time table, indices 0..N
    std::vector<double> dk;  // killing-clock table
    bool has_killing = false;
};

// Tent-kernel integral of height h centered at scale level y over the slab
// (xl, xr), against mu; peak_x is the lattice preimage of y.
double tent_integral(const DiffusionSpec& spec, const RadonMeasure& mu, double xl, double peak_x,
                     double xr, double h, double tol) {
    auto rising = [&](double z) {
        Bounds gap = mass_between(spec.scale.ds, xl, z, 0.05 * tol);
        return Bounds{std::min(gap.lo, h), std::min(gap.hi, h)};
    };
    auto falling = [&](double z) {
        Bounds gap = mass_between(spec.scale.ds, z, xr, 0.05 * tol);
        return Bounds{std::min(gap.lo, h), std::min(gap.hi, h)};
    };
    Bounds total = Bounds::exact(0.0);
    if (peak_x > xl)
        total += integrate_monotone(mu, Interval{xl, peak_x, false, false},
                                    std::function<Bounds(double)>(rising), true, 0.5 * tol);
    if (xr > peak_x)
        total += integrate_monotone(mu, Interval{peak_x, xr, false, false},
                                    std::function<Bounds(double)>(falling), false, 0.5 * tol);
    return std::max(total.mid(), 0.0);
}

// Outer half-tent at a window edge that sits on an infinite domain endpoint:
// the tent degenerates to the scale gap, i.e. the dissipativity integrand.
double improper_half_tent(const DiffusionSpec& spec, const RadonMeasure& mu, Side side,
                          double inner_x, double tol) {
    DiffusionSpec probe = spec;
    probe.speed = mu;
    Bounds v = dissipative_integral(probe, side, DissipativityRoute::Direct, inner_x, tol);
    return std::max(v.mid(), 0.0);
}

Lattice build_lattice(const DiffusionSpec& spec, double x0, double a, double b,
                      const SimConfig& cfg, double horizon) {
    if (!(a < x0 && x0 < b)) throw InvalidArgument("simulate: need a < x0 < b");
    auto edge_ok = [&](double v) {
        if (std::isinf(v)) return v == spec.domain.lo || v == spec.domain.hi;
        return spec.domain.closure().contains(v);
    };
    if (!edge_ok(a) || !edge_ok(b))
        throw InvalidArgument("simulate: window must lie in the domain closure");

    Lattice lat;
    const double tol = 1e-12;
    Bounds sa = eval_bounds(spec.scale, a, tol);
    Bounds sb = eval_bounds(spec.scale, b, tol);
    Bounds sx = eval_bounds(spec.scale, x0, tol);
    double y0 = sx.mid();

    lat.reflect_left = a == spec.domain.lo && spec.domain.lo_included;
    lat.reflect_right = b == spec.domain.hi && spec.domain.hi_included;

    // Clamp window edges whose scale image is infinite (second-class side):
    // the walk cannot reach them, so a censoring edge far out is adequate.
    double width = 16.0 * std::sqrt(std::max(1.0, horizon)) + 16.0;
    if (!sa.is_finite()) {
        lat.A = y0 - width;
        lat.clamped_left = true;
    } else {
        lat.A = sa.mid();
    }
    if (!sb.is_finite()) {
        lat.B = y0 + width;
        lat.clamped_right = true;
    } else {
        lat.B = sb.mid();
    }
    double D = lat.B - lat.A;
    if (!(D > 0.0)) throw InvalidArgument("simulate: window has no scale width");
    if (cfg.step_h > 0.0 && cfg.step_h > 0.5 * D)
        throw InvalidArgument("simulate: step_h too large for the window");

    double step = cfg.step_h > 0.0 ? cfg.step_h : D / 128.0;
    lat.N = static_cast<int>(std::clamp(std::round(D / step), 2.0, 1.0e5));
    lat.h = D / lat.N;
    lat.j0 = static_cast<int>(std::clamp(std::round((y0 - lat.A) / lat.h), 1.0,
                                         static_cast<double>(lat.N - 1)));

    // Lattice preimages; the interior point j0 is pinned to x0 itself.
    std::vector<double> xs(static_cast<std::size_t>(lat.N) + 1);
    const bool left_open_end = !lat.clamped_left && a == spec.domain.lo && !std::isfinite(a);
    const bool right_open_end = !lat.clamped_right && b == spec.domain.hi && !std::isfinite(b);
    for (int j = 0; j <= lat.N; ++j) {
        if (j == lat.j0) {
            xs[static_cast<std::size_t>(j)] = x0;
            continue;
        }
        if (j == 0 && !lat.clamped_left && std::isfinite(a)) {
            xs[0] = a;
            continue;
        }
        if (j == lat.N && !lat.clamped_right && std::isfinite(b)) {
            xs[static_cast<std::size_t>(lat.N)] = b;
            continue;
        }
        double y = lat.A + lat.h * j;
        if (j == 0 && left_open_end) {
            xs[0] = -kInf;
            continue;
        }
        if (j == lat.N && right_open_end) {
            xs[static_cast<std::size_t>(lat.N)] = kInf;
            continue;
        }
        xs[static_cast<std::size_t>(j)] = inverse(spec.scale, y, 1e-11).value;
    }

    lat.has_killing = !is_zero_measure(spec.killing);
    lat.dt.assign(static_cast<std::size_t>(lat.N) + 1, 0.0);
    lat.dk.assign(static_cast<std::size_t>(lat.N) + 1, 0.0);
    const double kernel_tol = 1e-6 * lat.h * lat.h;

    auto half_tent = [&](const RadonMeasure& mu, int j, Side outer_side) {
        // Outer half of the tent at lattice point j toward an infinite edge.
        double inner = xs[static_cast<std::size_t>(j)];
        return improper_half_tent(spec, mu, outer_side, inner, kernel_tol);
    };

    for (int j = 0; j <= lat.N; ++j) {
        bool interior = j > 0 && j < lat.N;
        bool reflecting_edge = (j == 0 && lat.reflect_left) || (j == lat.N && lat.reflect_right);
        if (!interior && !reflecting_edge) continue;  // absorbing or censoring edge
        double xl = j > 0 ? xs[static_cast<std::size_t>(j - 1)] : xs[0];
        double xr = j < lat.N ? xs[static_cast<std::size_t>(j + 1)] : xs[static_cast<std::size_t>(lat.N)];
        double peak = xs[static_cast<std::size_t>(j)];

        auto table_entry = [&](const RadonMeasure& mu) {
            double left_part = 0.0, right_part = 0.0;
            if (j > 0) {
                left_part = std::isinf(xl) ? half_tent(mu, j, Side::Left)
                                           : tent_integral(spec, mu, xl, peak, peak, lat.h, kernel_tol);
            }
            if (j < lat.N) {
                right_part = std::isinf(xr)
                                 ? half_tent(mu, j, Side::Right)
                                 : tent_integral(spec, mu, peak, peak, xr, lat.h, kernel_tol);
            }
            // Both halves are open at the peak; a point atom there sees the
            // full tent height.
            double peak_mass = mass_bounds(mu, Interval::closed(peak, peak), kernel_tol).mid();
            return left_part + right_part + peak_mass * lat.h;
        };
        lat.dt[static_cast<std::size_t>(j)] = table_entry(spec.speed);
        if (lat.has_killing) lat.dk[static_cast<std::size_t>(j)] = table_entry(spec.killing);
    }
    return lat;
}

struct PathOutcome {
    Terminal terminal;
    double lifetime;
    long steps;
    bool alive_at_horizon;
    bool hit_clamped_edge;
};

PathOutcome run_path(const Lattice& lat, const SimConfig& cfg, std::uint64_t path_index,
                     double horizon) {
    Rng rng(cfg.seed, path_index);
    double kill_threshold = kInf;
    if (lat.has_killing) kill_threshold = -std::log1p(-rng.uniform());

    int j = lat.j0;
    double t = 0.0, clock = 0.0;
    long steps = 0;
    while (steps < cfg.max_steps) {
        if (j == 0 && !lat.reflect_left)
            return {lat.clamped_left ? Terminal::Censored : Terminal::HitLeft, t, steps, false,
                    lat.clamped_left};
        if (j == lat.N && !lat.reflect_right)
            return {lat.clamped_right ? Terminal::Censored : Terminal::HitRight, t, steps, false,
                    lat.clamped_right};

        double hold = lat.dt[static_cast<std::size_t>(j)];
        if (lat.has_killing) {
            double dk = lat.dk[static_cast<std::size_t>(j)];
            if (clock + dk > kill_threshold) {
                double frac = dk > 0.0 ? (kill_threshold - clock) / dk : 0.0;
                double t_kill = t + frac * hold;
                if (!(std::isfinite(horizon)) || t_kill < horizon)
                    return {Terminal::Killed, t_kill, steps, false, false};
                return {Terminal::Censored, horizon, steps, true, false};
            }
            clock += dk;
        }
        if (std::isfinite(horizon) && t + hold >= horizon)
            return {Terminal::Censored, horizon, steps, true, false};
        t += hold;
        ++steps;
        if (j == 0)
            j = 1;
        else if (j == lat.N)
            j = lat.N - 1;
        else
            j += rng.coin() ? 1 : -1;
    }
    return {Terminal::Censored, t, steps, std::isfinite(horizon) && t >= horizon, false};
}

// Deterministic parallel map: chunk by index, results land in per-path slots.
template <typename F>
void parallel_paths(long n, F&& body) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = std::clamp(hw, 1u, 8u);
    if (n < 512) workers = 1;
    std::vector<std::thread> pool;
    long chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (long i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

}  // namespace

PathResult simulate_path(const DiffusionSpec& spec, double x0, double a, double b,
                         const SimConfig& cfg) {
    Lattice lat = build_lattice(spec, x0, a, b, cfg, kInf);
    PathOutcome out = run_path(lat, cfg, 0, kInf);
    return {out.terminal, out.lifetime, out.steps};
}

HittingEstimate estimate_hitting(const DiffusionSpec& spec, double a, double x, double b,
                                 long n_paths, const SimConfig& cfg) {
    if (n_paths < 1) throw InvalidArgument("estimate_hitting: n_paths must be >= 1");
    HittingEstimate est;
    est.n_used = n_paths;

    const double tol = 1e-12;
    Bounds gapL = mass_between(spec.scale.ds, a, x, tol);
    Bounds gapR = mass_between(spec.scale.ds, x, b, tol);
    Bounds D = gapL + gapR;
    est.formula_p = D.lo > 0.0 ? gapL.mid() / D.mid() : 0.0;
    double cert = D.lo > 0.0 ? (gapL.width() + gapR.width()) / D.lo : 0.0;

    if (x == a || x == b) {
        est.p_hat = est.formula_p = x == a ? 0.0 : 1.0;
        est.pass = true;
        return est;
    }

    Lattice lat = build_lattice(spec, x, a, b, cfg, kInf);
    lat.reflect_left = lat.reflect_right = false;  // a hit ends the race either way

    std::vector<std::uint8_t> hit_right(static_cast<std::size_t>(n_paths), 0);
    std::vector<std::uint8_t> censored(static_cast<std::size_t>(n_paths), 0);
    parallel_paths(n_paths, [&](long i) {
        PathOutcome out = run_path(lat, cfg, static_cast<std::uint64_t>(i), kInf);
        hit_right[static_cast<std::size_t>(i)] = out.terminal == Terminal::HitRight;
        censored[static_cast<std::size_t>(i)] = out.terminal == Terminal::Censored ||
                                                out.terminal == Terminal::Killed;
    });
    long hits = 0, cens = 0;
    for (long i = 0; i < n_paths; ++i) {
        hits += hit_right[static_cast<std::size_t>(i)];
        cens += censored[static_cast<std::size_t>(i)];
    }
    est.censored = cens;
    est.n_used = n_paths - cens;
    est.too_many_censored = cens > n_paths / 100;
    if (est.n_used > 0) est.p_hat = static_cast<double>(hits) / static_cast<double>(est.n_used);

    const double z99 = 2.5758293035489004;  // two-sided 99% normal quantile
    double v = std::max(est.p_hat * (1.0 - est.p_hat), 1e-12);
    est.ci_halfwidth = z99 * std::sqrt(v / std::max<long>(est.n_used, 1));
    double alignment = std::fabs(static_cast<double>(lat.j0) / lat.N - est.formula_p);
    est.slack = alignment + cert;
    est.pass = std::fabs(est.p_hat - est.formula_p) <= est.ci_halfwidth + est.slack &&
               !est.too_many_censored;
    return est;
}

ExitTimeEstimate estimate_exit_time(const DiffusionSpec& spec, double a, double x, double b,
                                    long n_paths, const SimConfig& cfg) {
    if (n_paths < 1) throw InvalidArgument("estimate_exit_time: n_paths must be >= 1");
    Lattice lat = build_lattice(spec, x, a, b, cfg, kInf);
    lat.reflect_left = lat.reflect_right = false;

    std::vector<double> life(static_cast<std::size_t>(n_paths), 0.0);
    std::vector<std::uint8_t> censored(static_cast<std::size_t>(n_paths), 0);
    parallel_paths(n_paths, [&](long i) {
        PathOutcome out = run_path(lat, cfg, static_cast<std::uint64_t>(i), kInf);
        life[static_cast<std::size_t>(i)] = out.lifetime;
        censored[static_cast<std::size_t>(i)] = out.terminal == Terminal::Censored;
    });

    ExitTimeEstimate est;
    for (long i = 0; i < n_paths; ++i) est.censored += censored[static_cast<std::size_t>(i)];
    est.n_used = n_paths - est.censored;
    if (est.n_used == 0) return est;

    std::vector<double> used;
    used.reserve(static_cast<std::size_t>(est.n_used));
    for (long i = 0; i < n_paths; ++i)
        if (!censored[static_cast<std::size_t>(i)]) used.push_back(life[static_cast<std::size_t>(i)]);
    est.mean = pairwise_sum(used, 0, used.size()) / static_cast<double>(used.size());
    std::vector<double> sq(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) {
        double d = used[i] - est.mean;
        sq[i] = d * d;
    }
    double var = used.size() > 1
                     ? pairwise_sum(sq, 0, sq.size()) / static_cast<double>(used.size() - 1)
                     : 0.0;
    est.stderr_ = std::sqrt(var / static_cast<double>(used.size()));
    return est;
}

SurvivalEstimate estimate_survival(const DiffusionSpec& spec, double x, double horizon,
                                   long n_paths, const SimConfig& cfg) {
    if (n_paths < 1) throw InvalidArgument("estimate_survival: n_paths must be >= 1");
    if (!(horizon > 0.0)) throw InvalidArgument("estimate_survival: horizon must be positive");
    Lattice lat = build_lattice(spec, x, spec.domain.lo, spec.domain.hi, cfg, horizon);

    std::vector<std::uint8_t> alive(static_cast<std::size_t>(n_paths), 0);
    std::vector<std::uint8_t> undecided(static_cast<std::size_t>(n_paths), 0);
    parallel_paths(n_paths, [&](long i) {
        PathOutcome out = run_path(lat, cfg, static_cast<std::uint64_t>(i), horizon);
        // A path stopped at an artificial (clamped) edge would have continued
        // in the true diffusion, so it counts as alive.
        alive[static_cast<std::size_t>(i)] = out.alive_at_horizon || out.hit_clamped_edge;
        undecided[static_cast<std::size_t>(i)] = out.terminal == Terminal::Censored &&
                                                 !out.alive_at_horizon && !out.hit_clamped_edge;
    });

    SurvivalEstimate est;
    est.n_paths = n_paths;
    long alive_count = 0;
    for (long i = 0; i < n_paths; ++i) {
        alive_count += alive[static_cast<std::size_t>(i)];
        est.indeterminate += undecided[static_cast<std::size_t>(i)];
    }
    est.fraction = static_cast<double>(alive_count) / static_cast<double>(n_paths);
    return est;
}

}  // namespace lindiff
