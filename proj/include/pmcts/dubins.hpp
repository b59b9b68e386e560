#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pmcts/geometry.hpp"

namespace pmcts {

// Planar robot configuration; heading in [-pi, pi).
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;

    Point2 position() const { return {x, y}; }
};

inline Pose make_pose(double x, double y, double heading) {
    return {x, y, normalize_angle(heading)};
}

enum class DubinsWord { LSL, RSR, LSR, RSL, RLR, LRL };

const char* to_string(DubinsWord word);

// One segment of a Dubins curve: 'L' / 'R' arcs or 'S' straight,
// with length in km.
struct DubinsSegment {
    char type = 'S';
    double length = 0.0;
};

struct PrimitivePath {
    Pose start;
    Pose end;
    DubinsWord word = DubinsWord::LSL;
    std::array<DubinsSegment, 3> segments{};
    double length = 0.0;          // km
    std::vector<Pose> samples;    // first == start, last == end
};

// Minimum-length path among the six Dubins words, sampled at most
// `sample_spacing` apart. r_min must be positive.
PrimitivePath shortest_dubins(const Pose& start, const Pose& end, double r_min,
                              double sample_spacing = 0.1);

struct PrimitiveParams {
    int count = 15;
    double arc_length = 1.0;       // chord from pose to each terminal pose, km
    double turn_radius = 0.25;     // km
    double sample_spacing = 0.1;   // km
    double fan_halfwidth = 3.0 * M_PI / 4.0;  // relative heading span
};

// Dubins primitives to `count` terminal poses fanned evenly across
// [-fan_halfwidth, +fan_halfwidth] relative to the current heading, each
// terminal heading pointing outward along its fan direction. Primitives
// with any sample outside the workspace are dropped entirely. May return
// an empty set (cornered pose).
std::vector<PrimitivePath> feasible_primitives(const Pose& pose, const PrimitiveParams& params,
                                               const Extent& workspace);

// feasible_primitives, but an empty result is an error: the caller is
// expected to replan from a perturbed heading.
std::vector<PrimitivePath> primitive_set(const Pose& pose, const PrimitiveParams& params,
                                         const Extent& workspace);

} // namespace pmcts
