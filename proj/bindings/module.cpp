// Python surface: JSON strings in, plain dict-shaped values out. The heavy
// objects stay opaque handles; everything numeric mirrors the CLI verbs.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "lindiff/chain.hpp"
#include "lindiff/simulate.hpp"
#include "lindiff/spec_io.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace lindiff;

namespace {

py::object tri_to_py(TriBool t) {
    if (t == TriBool::Unknown) return py::str("unknown");
    return py::bool_(t == TriBool::Yes);
}

py::dict classify_dict(const DiffusionSpec& spec) {
    py::dict out;
    for (Side side : {Side::Left, Side::Right}) {
        BoundaryClass bc = classify(spec, side);
        py::dict s;
        s["class"] = to_string(bc.klass);
        s["dissipative"] = tri_to_py(bc.dissipative);
        out[side == Side::Left ? "left" : "right"] = s;
    }
    out["recurrent"] = tri_to_py(is_recurrent(spec));
    out["conservative"] = tri_to_py(is_conservative(spec));
    out["strongly_local"] = is_zero_measure(spec.killing);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "one-dimensional diffusions as (scale, speed, killing) triples";

    py::class_<SpecFile>(m, "Spec")
        .def_property_readonly("name", [](const SpecFile& s) { return s.name; })
        .def("to_json", [](const SpecFile& s) { return dump_canonical(to_json(s)); })
        .def("__repr__", [](const SpecFile& s) { return "<Spec '" + s.name + "'>"; });

    m.def("named_example", &build_named_example, py::arg("name"), py::arg("signed_variant") = false,
          "build one of the named example specs");
    m.def("parse_spec", &parse_spec_file, py::arg("text"), "parse a spec from canonical JSON");
    m.def("load_spec", &load_spec_file, py::arg("path"));

    m.def("classify", [](const SpecFile& s) { return classify_dict(s.spec); },
          "boundary classes, dissipativity, recurrence, conservativeness");

    m.def("scale_value", [](const SpecFile& s, double x, double tol) {
              Approx v = eval(s.spec.scale, x, tol);
              return py::make_tuple(v.value, v.error);
          },
          py::arg("spec"), py::arg("x"), py::arg("tol") = 1e-9);

    m.def("measure_mass", [](const SpecFile& s, double lo, double hi, double tol) {
              Approx v = mass(s.spec.speed, Interval::open(lo, hi), tol);
              return py::make_tuple(v.value, v.error);
          },
          py::arg("spec"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-9);

    m.def("cantor_function", &cantor_function, py::arg("x"), py::arg("depth") = 40);
    m.def("enumerate_rationals", [](int n) {
              Rational r = enumerate_rationals(n);
              return py::make_tuple(r.num, r.den);
          },
          py::arg("n"));

    m.def("mean_exit_time", [](const SpecFile& s, double a, double x, double b, double tol) {
              Approx v = mean_exit_time(s.spec, a, x, b, tol);
              return py::make_tuple(v.value, v.error);
          },
          py::arg("spec"), py::arg("a"), py::arg("x"), py::arg("b"), py::arg("tol") = 1e-9);

    m.def("energy_json", [](const SpecFile& s, const std::string& u_json,
                            const std::string& v_json, double tol) {
              FormFunction u = form_from_json(json::parse(u_json));
              FormFunction v = v_json.empty() ? u : form_from_json(json::parse(v_json));
              Approx e = energy(s.spec, u, v, tol);
              return py::make_tuple(e.value, e.error);
          },
          py::arg("spec"), py::arg("u"), py::arg("v") = std::string(), py::arg("tol") = 1e-9);

    m.def("membership_json", [](const SpecFile& s, const SpecFile& governing,
                                const std::string& u_json, const std::string& variant) {
              FormFunction u = form_from_json(json::parse(u_json));
              MembershipVariant mv = variant == "zero_boundary" ? MembershipVariant::ZeroBoundary
                                                                : MembershipVariant::Full;
              VerdictReport rep = membership(s.spec, governing.spec.scale, u, mv);
              py::dict out;
              out["verdict"] = to_string(rep.verdict);
              out["reason"] = rep.reason;
              return out;
          },
          py::arg("spec"), py::arg("governing"), py::arg("u"), py::arg("variant") = "full");

    m.def("is_regular_subspace", [](const SpecFile& sub, const SpecFile& sup) {
              VerdictReport rep = is_regular_subspace(sub.spec, sup.spec);
              py::dict out;
              out["verdict"] = to_string(rep.verdict);
              out["reason"] = rep.reason;
              return out;
          },
          py::arg("sub"), py::arg("sup"));

    m.def("estimate_hitting", [](const SpecFile& s, double a, double x, double b, long n,
                                 std::uint64_t seed, double step_h) {
              SimConfig cfg;
              cfg.seed = seed;
              cfg.step_h = step_h;
              HittingEstimate est = estimate_hitting(s.spec, a, x, b, n, cfg);
              py::dict out;
              out["p_hat"] = est.p_hat;
              out["ci"] = est.ci_halfwidth;
              out["formula_p"] = est.formula_p;
              out["pass"] = est.pass;
              out["censored"] = est.censored;
              return out;
          },
          py::arg("spec"), py::arg("a"), py::arg("x"), py::arg("b"), py::arg("n"), py::arg("seed"),
          py::arg("step_h") = 0.0);

    m.def("estimate_exit_time", [](const SpecFile& s, double a, double x, double b, long n,
                                   std::uint64_t seed, double step_h) {
              SimConfig cfg;
              cfg.seed = seed;
              cfg.step_h = step_h;
              ExitTimeEstimate est = estimate_exit_time(s.spec, a, x, b, n, cfg);
              py::dict out;
              out["mean"] = est.mean;
              out["stderr"] = est.stderr_;
              out["censored"] = est.censored;
              return out;
          },
          py::arg("spec"), py::arg("a"), py::arg("x"), py::arg("b"), py::arg("n"), py::arg("seed"),
          py::arg("step_h") = 0.0);

    m.def("estimate_survival", [](const SpecFile& s, double x, double horizon, long n,
                                  std::uint64_t seed, double step_h) {
              SimConfig cfg;
              cfg.seed = seed;
              cfg.step_h = step_h;
              SurvivalEstimate est = estimate_survival(s.spec, x, horizon, n, cfg);
              py::dict out;
              out["fraction"] = est.fraction;
              out["indeterminate"] = est.indeterminate;
              return out;
          },
          py::arg("spec"), py::arg("x"), py::arg("horizon"), py::arg("n"), py::arg("seed"),
          py::arg("step_h") = 0.0);

    m.def("chain_check", [](const SpecFile& s, const std::vector<double>& grid, double alpha) {
              FiniteChain chain = discretize(s.spec, grid);
              Lemma21Report rep = lemma21_report(chain, alpha);
              py::dict out;
              out["n"] = chain.n;
              out["irreducible"] = rep.irreducible;
              out["consistent"] = rep.consistent;
              try {
                  out["cone_dimension"] = symmetrizing_basis(chain).dimension();
              } catch (const EmptyCone&) {
                  out["cone_dimension"] = 0;
              }
              return out;
          },
          py::arg("spec"), py::arg("grid"), py::arg("alpha") = 1.0);

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation", PyExc_RuntimeError);
}
