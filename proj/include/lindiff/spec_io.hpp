#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lindiff/form.hpp"

namespace lindiff {

/// On-disk representation of a diffusion triple. Loading validates every
/// module-level invariant; saving is canonical (sorted keys, two-space
/// indent, shortest round-trip floats, infinities as "inf"/"-inf") so that
/// load followed by save is byte-identical.
struct SpecFile {
    int version = 1;
    std::string name;
    DiffusionSpec spec;
};

nlohmann::json to_json(const Interval& v);
nlohmann::json to_json(const MeasureComponent& v);
nlohmann::json to_json(const RadonMeasure& v);
nlohmann::json to_json(const ScaleFunction& v);
nlohmann::json to_json(const SpecFile& v);
nlohmann::json to_json(const FormFunction& v);

Interval interval_from_json(const nlohmann::json& j);
MeasureComponent component_from_json(const nlohmann::json& j);
RadonMeasure measure_from_json(const nlohmann::json& j);
ScaleFunction scale_from_json(const nlohmann::json& j);
SpecFile spec_file_from_json(const nlohmann::json& j);
FormFunction form_from_json(const nlohmann::json& j);

std::string dump_canonical(const nlohmann::json& j);

SpecFile load_spec_file(const std::string& path);
void save_spec_file(const SpecFile& spec, const std::string& path);
SpecFile parse_spec_file(const std::string& text);

/// The named example specs:
///   brownian_line    (R, s = id, m = Lebesgue, k = 0)
///   brownian_01      ([0,1], s = id, m = Lebesgue, k = 0)
///   cantor_scale     ([0,1], s = x + c(x), m = Lebesgue, k = 0)
///   rational_windows ((0,inf), ds = 1_G dy, m = Lebesgue, k = 0); the signed
///                    variant lives on all of R.
SpecFile build_named_example(const std::string& name, bool signed_variant = false);

}  // namespace lindiff
