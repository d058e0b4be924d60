#include "lindiff/spec_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace lindiff {

using nlohmann::json;

namespace {

json encode_extended(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double decode_extended(const json& j, const char* what) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw InvalidArgument(std::string(what) + ": unknown extended-real literal '" + s + "'");
    }
    if (!j.is_number()) throw InvalidArgument(std::string(what) + ": expected a number");
    return j.get<double>();
}

std::vector<double> decode_array(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string(what) + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(decode_extended(v, what));
    return out;
}

json encode_array(const std::vector<double>& xs) {
    json out = json::array();
    for (double v : xs) out.push_back(encode_extended(v));
    return out;
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace

json to_json(const Interval& v) {
    return json{{"lo", encode_extended(v.lo)},
                {"hi", encode_extended(v.hi)},
                {"lo_included", v.lo_included},
                {"hi_included", v.hi_included}};
}

Interval interval_from_json(const json& j) {
    return Interval(decode_extended(require(j, "lo"), "interval.lo"),
                    decode_extended(require(j, "hi"), "interval.hi"),
                    require(j, "lo_included").get<bool>(), require(j, "hi_included").get<bool>());
}

json to_json(const MeasureComponent& v) {
    if (const auto* d = std::get_if<LebesgueDensity>(&v))
        return json{{"kind", "lebesgue_density"},
                    {"breakpoints", encode_array(d->breakpoints)},
                    {"values", encode_array(d->values)}};
    if (const auto* a = std::get_if<Atom>(&v))
        return json{{"kind", "atom"}, {"location", a->location}, {"mass", a->mass}};
    if (const auto* c = std::get_if<CantorCopy>(&v))
        return json{{"kind", "cantor_copy"}, {"support", to_json(c->support)}, {"weight", c->weight}};
    const auto& rw = std::get<RationalWindows>(v);
    json cutoff = rw.count_cutoff ? json(*rw.count_cutoff) : json("unbounded");
    return json{{"kind", "rational_windows"}, {"count_cutoff", cutoff}, {"signed", rw.signed_enumeration}};
}

MeasureComponent component_from_json(const json& j) {
    const std::string kind = require(j, "kind").get<std::string>();
    MeasureComponent out;
    if (kind == "lebesgue_density") {
        out = LebesgueDensity{decode_array(require(j, "breakpoints"), "breakpoints"),
                              decode_array(require(j, "values"), "values")};
    } else if (kind == "atom") {
        out = Atom{require(j, "location").get<double>(), require(j, "mass").get<double>()};
    } else if (kind == "cantor_copy") {
        out = CantorCopy{interval_from_json(require(j, "support")), require(j, "weight").get<double>()};
    } else if (kind == "rational_windows") {
        const json& cutoff = require(j, "count_cutoff");
        std::optional<int> n;
        if (!cutoff.is_string()) n = cutoff.get<int>();
        out = RationalWindows{n, require(j, "signed").get<bool>()};
    } else {
        throw InvalidArgument("unknown measure component kind '" + kind + "'");
    }
    validate(out);
    return out;
}

json to_json(const RadonMeasure& v) {
    json out = json::array();
    for (const auto& c : v.components) out.push_back(to_json(c));
    return out;
}

RadonMeasure measure_from_json(const json& j) {
    if (!j.is_array()) throw InvalidArgument("measure: expected an array of components");
    RadonMeasure out;
    for (const auto& c : j) out.components.push_back(component_from_json(c));
    return out;
}

json to_json(const ScaleFunction& v) {
    return json{{"base_x", v.base_x}, {"base_val", v.base_val}, {"ds", to_json(v.ds)}};
}

ScaleFunction scale_from_json(const json& j) {
    ScaleFunction s{require(j, "base_x").get<double>(), require(j, "base_val").get<double>(),
                    measure_from_json(require(j, "ds"))};
    validate(s);
    return s;
}

json to_json(const SpecFile& v) {
    return json{{"version", v.version},
                {"name", v.name},
                {"interval", to_json(v.spec.domain)},
                {"scale", to_json(v.spec.scale)},
                {"speed", to_json(v.spec.speed)},
                {"killing", to_json(v.spec.killing)}};
}

SpecFile spec_file_from_json(const json& j) {
    SpecFile out;
    out.version = require(j, "version").get<int>();
    if (out.version != 1) throw InvalidArgument("unsupported spec file version");
    out.name = require(j, "name").get<std::string>();
    out.spec.domain = interval_from_json(require(j, "interval"));
    out.spec.scale = scale_from_json(require(j, "scale"));
    out.spec.speed = measure_from_json(require(j, "speed"));
    out.spec.killing = measure_from_json(require(j, "killing"));
    validate(out.spec);
    return out;
}

json to_json(const FormFunction& v) {
    json coeffs = json::array();
    for (const auto& pc : v.coefficients)
        coeffs.push_back(
            json{{"breakpoints", encode_array(pc.breakpoints)}, {"values", encode_array(pc.values)}});
    return json{{"base_x", v.base_x}, {"base_val", v.base_val}, {"coeffs", coeffs}};
}

FormFunction form_from_json(const json& j) {
    FormFunction out;
    out.base_x = require(j, "base_x").get<double>();
    out.base_val = require(j, "base_val").get<double>();
    const json& coeffs = require(j, "coeffs");
    if (!coeffs.is_array()) throw InvalidArgument("form: coeffs must be an array");
    for (const auto& c : coeffs) {
        PiecewiseConstant pc{decode_array(require(c, "breakpoints"), "coeff breakpoints"),
                             decode_array(require(c, "values"), "coeff values")};
        validate(pc);
        out.coefficients.push_back(std::move(pc));
    }
    return out;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

SpecFile parse_spec_file(const std::string& text) {
    return spec_file_from_json(json::parse(text));
}

SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_file(buf.str());
}

void save_spec_file(const SpecFile& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write spec file: " + path);
    out << dump_canonical(to_json(spec));
}

SpecFile build_named_example(const std::string& name, bool signed_variant) {
    SpecFile out;
    out.name = name;
    if (name == "brownian_line") {
        out.spec.domain = Interval::whole_line();
        out.spec.scale = ScaleFunction::identity();
        out.spec.speed = RadonMeasure::lebesgue(Interval::whole_line());
    } else if (name == "brownian_01") {
        out.spec.domain = Interval::closed(0.0, 1.0);
        out.spec.scale = ScaleFunction{0.0, 0.0, RadonMeasure::lebesgue(Interval::closed(0.0, 1.0))};
        out.spec.speed = RadonMeasure::lebesgue(Interval::closed(0.0, 1.0));
    } else if (name == "cantor_scale") {
        out.spec.domain = Interval::closed(0.0, 1.0);
        out.spec.scale = ScaleFunction::cantor_plus_identity();
        out.spec.speed = RadonMeasure::lebesgue(Interval::closed(0.0, 1.0));
    } else if (name == "rational_windows") {
        if (signed_variant) {
            out.name = "rational_windows_signed";
            out.spec.domain = Interval::whole_line();
            out.spec.scale = ScaleFunction::rational_window_scale(true);
            out.spec.speed = RadonMeasure::lebesgue(Interval::whole_line());
        } else {
            out.spec.domain = Interval{0.0, kInf, false, false};
            out.spec.scale = ScaleFunction::rational_window_scale(false);
            out.spec.speed = RadonMeasure::lebesgue(Interval{0.0, kInf, false, false});
        }
    } else {
        throw InvalidArgument("unknown named example '" + name + "'");
    }
    validate(out.spec);
    return out;
}

}  // namespace lindiff
