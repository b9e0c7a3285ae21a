#pragma once

#include <string>
#include <string_view>

#include "mfn/types.hpp"

namespace mfn::io {

// JSON layouts:
//   model: {"n": 2, "b": [..], "c": 1.0, "g": [..], "H": [row-major n*n entries]}
//   set:   {"n": 2, "points": [[..], [..], ...], "base_index": 1}   (base_index is 1-based, optional)
// Numbers are written with the shortest representation that round-trips.

std::string to_json(const QuadraticModel& model);
std::string to_json(const InterpolationSet& set);

QuadraticModel model_from_json(std::string_view text);
InterpolationSet set_from_json(std::string_view text);

/// One point per line, comma separated, no header.
std::string to_csv(const InterpolationSet& set);
InterpolationSet set_from_csv(std::string_view text);

/// Shortest round-trip decimal form of a double.
std::string shortest(double value);

}  // namespace mfn::io
