#pragma once

// JSON function descriptors:
//
//   {"domain": [-1, 1],
//    "poly":   [c0, c1, ...],
//    "trig":   [[frequency, cos_coeff, sin_coeff], ...],
//    "jumps":  [{"x": X, "left": l, "right": r, "value": d}, ...]}
//
// where X is one of
//   0.25                                   plain float abscissa
//   {"num": 1, "den": 3}                   exact rational x
//   {"theta_num": 1, "theta_den": 3}       x = cos(π·1/3)
//   {"value": 0.707..., "irrational": true}
//   {"theta": 0.25..., "irrational": true} x = cos(π·theta), theta irrational
//
// Doubles are written in shortest round-trip form, so parse(dump(f)) == f.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "convidx/piecewise.hpp"

namespace convidx::piecewise {

nlohmann::json location_to_json(const JumpLocation& loc);
JumpLocation location_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JumpFunction& f);
JumpFunction function_from_json(const nlohmann::json& j);

std::string dump_descriptor(const JumpFunction& f);
JumpFunction parse_descriptor(std::string_view text);
JumpFunction load_descriptor(const std::filesystem::path& path);
void save_descriptor(const JumpFunction& f, const std::filesystem::path& path);

}  // namespace convidx::piecewise
