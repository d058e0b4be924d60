#pragma once

#include <utility>
#include <vector>

#include "lindiff/form.hpp"

namespace lindiff {

enum class BoundaryKlass { First, Second, Third };

const char* to_string(BoundaryKlass k);

/// First: endpoint finite and in I. Second: not in I with divergent scale.
/// Third: not in I with finite scale limit. Dissipative is meaningful only
/// for Third; first- and second-class endpoints are always conservative.
struct BoundaryClass {
    BoundaryKlass klass = BoundaryKlass::First;
    TriBool dissipative = TriBool::No;
};

BoundaryClass classify(const DiffusionSpec& spec, Side side);

enum class DissipativityRoute { Direct, ViaM };

/// Certified value of the dissipativity integral at probe c:
///   Direct: int over (a,c) of |s(x)-s(a)| m(dx)
///   ViaM:   int over (a,c) of m(between(x,c)) ds(x)
/// The two routes agree by Fubini and serve as independent cross-checks.
Bounds dissipative_integral(const DiffusionSpec& spec, Side side, DissipativityRoute route,
                            double c, double tol);

/// Yes when a certified upper bound of the integral is finite, No when the
/// side is not third class (the gate) or a certified lower bound diverges,
/// Unknown when neither could be established on the tolerance ladder.
TriBool is_dissipative(const DiffusionSpec& spec, Side side, double tol);
TriBool is_dissipative_via_M(const DiffusionSpec& spec, Side side, double tol);

/// Values (x_k, M(x_k) * |s(x_k) - s(a)|) along a geometric sequence x_k
/// approaching the endpoint; attests the vanishing-product limit at a
/// dissipative endpoint. Throws InvalidArgument when the side is not
/// dissipative.
std::vector<std::pair<double, double>> limit_MS(const DiffusionSpec& spec, Side side,
                                                int sequence_length);

/// Recurrent iff k = 0 and both endpoints are first or second class.
TriBool is_recurrent(const DiffusionSpec& spec);

/// Conservative iff k = 0 and both endpoints are conservative.
TriBool is_conservative(const DiffusionSpec& spec);

/// Expected exit time of the (k = 0) diffusion from (a,b) started at x:
/// int G(x,z) m(dz) with the natural-scale Green kernel
///   G(x,z) = 2 (s(x^z)-s(a)) (s(b)-s(x v z)) / (s(b)-s(a)),
/// normalized so that (s = id, m = Lebesgue) exits (-h, h) in h^2 on average.
Approx mean_exit_time(const DiffusionSpec& spec, double a, double x, double b, double tol);

}  // namespace lindiff
