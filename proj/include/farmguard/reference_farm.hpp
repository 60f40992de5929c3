#pragma once

#include <string_view>

#include "farmguard/world.hpp"

namespace farmguard {

// A 300 m x 175 m (about 13 acre) vegetable farm: three tall trees, a house
// (20 x 15 m) and a greenhouse (25 x 10 m), with both charging stations next
// to the house. Layout is hand-drawn; positions are approximate.
// Kept in sync with data/reference_farm.json.
inline constexpr std::string_view kReferenceFarmJson = R"({
  "perimeter": {"min": [0, 0], "max": [300, 175]},
  "obstacles": [
    {"type": "circle", "center": [60, 125], "radius": 8},
    {"type": "circle", "center": [175, 50], "radius": 8},
    {"type": "circle", "center": [250, 160], "radius": 8},
    {"type": "rect", "min": [118, 8], "max": [138, 23]},
    {"type": "rect", "min": [200, 100], "max": [225, 110]}
  ],
  "stations": [[125, 35], [140, 35]],
  "clearance_m": 10,
  "grid_spacing_m": 38
}
)";

inline FarmMap reference_farm() { return parse_map(kReferenceFarmJson); }

}  // namespace farmguard
