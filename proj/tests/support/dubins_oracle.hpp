#pragma once

// Independent Dubins-length oracle. Candidate paths are built from
// explicit circle centers and tangent points (the production code uses
// closed-form heading arithmetic instead and never materializes tangent
// points), and every candidate is verified by forward integration before
// it may contribute to the minimum.

#include <cmath>
#include <optional>
#include <vector>

#include "pmcts/dubins.hpp"
#include "pmcts/geometry.hpp"

namespace dubins_oracle {

using pmcts::Point2;
using pmcts::Pose;

struct Seg {
    char type;
    double len;
};

inline Point2 rot90(const Point2& v) { return {-v.y, v.x}; }
inline Point2 rot270(const Point2& v) { return {v.y, -v.x}; }

inline Point2 circle_center(const Pose& p, double r, char side) {
    if (side == 'L') return {p.x - r * std::sin(p.heading), p.y + r * std::cos(p.heading)};
    return {p.x + r * std::sin(p.heading), p.y - r * std::cos(p.heading)};
}

inline double point_angle(const Point2& center, const Point2& p) {
    return std::atan2(p.y - center.y, p.x - center.x);
}

inline double ccw_arc(const Point2& c, const Point2& from, const Point2& to, double r) {
    return r * pmcts::mod_two_pi(point_angle(c, to) - point_angle(c, from));
}

inline double cw_arc(const Point2& c, const Point2& from, const Point2& to, double r) {
    return r * pmcts::mod_two_pi(point_angle(c, from) - point_angle(c, to));
}

inline Pose advance_pose(const Pose& p, const Seg& seg, double r) {
    if (seg.type == 'S')
        return {p.x + seg.len * std::cos(p.heading), p.y + seg.len * std::sin(p.heading),
                p.heading};
    const double delta = seg.len / r;
    if (seg.type == 'L') {
        const Point2 c = circle_center(p, r, 'L');
        const double a = point_angle(c, {p.x, p.y}) + delta;
        return {c.x + r * std::cos(a), c.y + r * std::sin(a),
                pmcts::normalize_angle(p.heading + delta)};
    }
    const Point2 c = circle_center(p, r, 'R');
    const double a = point_angle(c, {p.x, p.y}) - delta;
    return {c.x + r * std::cos(a), c.y + r * std::sin(a),
            pmcts::normalize_angle(p.heading - delta)};
}

inline bool reaches(const Pose& start, const Pose& goal, const std::vector<Seg>& segs,
                    double r) {
    Pose p = start;
    for (const Seg& s : segs) p = advance_pose(p, s, r);
    return std::abs(p.x - goal.x) < 1e-6 && std::abs(p.y - goal.y) < 1e-6 &&
           std::abs(pmcts::normalize_angle(p.heading - goal.heading)) < 1e-6;
}

// Tangent-point construction for one CSC word; side1/side2 in {'L','R'}.
inline std::optional<std::vector<Seg>> csc(const Pose& start, const Pose& goal, double r,
                                           char side1, char side2) {
    const Point2 c1 = circle_center(start, r, side1);
    const Point2 c2 = circle_center(goal, r, side2);
    const double dd = pmcts::distance(c1, c2);
    if (dd < 1e-9) return std::nullopt;  // degenerate; other words cover it
    const Point2 u{(c2.x - c1.x) / dd, (c2.y - c1.y) / dd};

    Point2 v = u;  // tangent direction
    if (side1 != side2) {
        if (dd < 2.0 * r) return std::nullopt;
        const double omega = std::asin(std::min(1.0, 2.0 * r / dd));
        const double rot = side1 == 'L' ? omega : -omega;
        v = {u.x * std::cos(rot) - u.y * std::sin(rot),
             u.x * std::sin(rot) + u.y * std::cos(rot)};
    }
    const Point2 off1 = side1 == 'L' ? rot270(v) : rot90(v);
    const Point2 off2 = side2 == 'L' ? rot270(v) : rot90(v);
    const Point2 t1{c1.x + r * off1.x, c1.y + r * off1.y};
    const Point2 t2{c2.x + r * off2.x, c2.y + r * off2.y};

    const Point2 start_pt{start.x, start.y};
    const Point2 goal_pt{goal.x, goal.y};
    const double arc1 = side1 == 'L' ? ccw_arc(c1, start_pt, t1, r) : cw_arc(c1, start_pt, t1, r);
    const double arc2 = side2 == 'L' ? ccw_arc(c2, t2, goal_pt, r) : cw_arc(c2, t2, goal_pt, r);
    return std::vector<Seg>{{side1, arc1}, {'S', pmcts::distance(t1, t2)}, {side2, arc2}};
}

// Both mirror-image middle circles for one CCC word.
inline std::vector<std::vector<Seg>> ccc(const Pose& start, const Pose& goal, double r,
                                         char outer) {
    std::vector<std::vector<Seg>> out;
    const char inner = outer == 'L' ? 'R' : 'L';
    const Point2 c1 = circle_center(start, r, outer);
    const Point2 c2 = circle_center(goal, r, outer);
    const double dd = pmcts::distance(c1, c2);
    if (dd > 4.0 * r) return out;

    const Point2 mid{0.5 * (c1.x + c2.x), 0.5 * (c1.y + c2.y)};
    const double h = std::sqrt(std::max(0.0, 4.0 * r * r - 0.25 * dd * dd));
    Point2 n{0.0, 1.0};
    if (dd > 1e-12) n = rot90({(c2.x - c1.x) / dd, (c2.y - c1.y) / dd});

    const Point2 start_pt{start.x, start.y};
    const Point2 goal_pt{goal.x, goal.y};
    for (const double sign : {1.0, -1.0}) {
        const Point2 m{mid.x + sign * h * n.x, mid.y + sign * h * n.y};
        const Point2 t1{0.5 * (c1.x + m.x), 0.5 * (c1.y + m.y)};
        const Point2 t2{0.5 * (c2.x + m.x), 0.5 * (c2.y + m.y)};
        const double a1 =
            outer == 'L' ? ccw_arc(c1, start_pt, t1, r) : cw_arc(c1, start_pt, t1, r);
        const double a2 = outer == 'L' ? cw_arc(m, t1, t2, r) : ccw_arc(m, t1, t2, r);
        const double a3 = outer == 'L' ? ccw_arc(c2, t2, goal_pt, r) : cw_arc(c2, t2, goal_pt, r);
        out.push_back({{outer, a1}, {inner, a2}, {outer, a3}});
    }
    return out;
}

// Minimum verified candidate length over all six words.
inline std::optional<double> shortest_length(const Pose& start, const Pose& goal, double r) {
    std::vector<std::vector<Seg>> candidates;
    for (const auto& [s1, s2] :
         std::vector<std::pair<char, char>>{{'L', 'L'}, {'R', 'R'}, {'L', 'R'}, {'R', 'L'}}) {
        if (auto cand = csc(start, goal, r, s1, s2)) candidates.push_back(std::move(*cand));
    }
    for (char outer : {'L', 'R'}) {
        for (auto& cand : ccc(start, goal, r, outer)) candidates.push_back(std::move(cand));
    }

    std::optional<double> best;
    for (const auto& cand : candidates) {
        if (!reaches(start, goal, cand, r)) continue;
        double length = 0.0;
        for (const Seg& s : cand) length += s.len;
        if (!best || length < *best) best = length;
    }
    return best;
}

} // namespace dubins_oracle
