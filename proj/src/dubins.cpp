#include "pmcts/dubins.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace pmcts {

namespace {

Point2 left_center(const Pose& p, double r) {
    return {p.x - r * std::sin(p.heading), p.y + r * std::cos(p.heading)};
}

Point2 right_center(const Pose& p, double r) {
    return {p.x + r * std::sin(p.heading), p.y - r * std::cos(p.heading)};
}

double angle_of(const Point2& from, const Point2& to) {
    return std::atan2(to.y - from.y, to.x - from.x);
}

struct Candidate {
    DubinsWord word;
    std::array<DubinsSegment, 3> segments;
    double length;
};

std::optional<Candidate> make_candidate(DubinsWord word, char a, double la, char b, double lb,
                                        char c, double lc) {
    if (!(std::isfinite(la) && std::isfinite(lb) && std::isfinite(lc))) return std::nullopt;
    Candidate cand;
    cand.word = word;
    cand.segments = {DubinsSegment{a, la}, DubinsSegment{b, lb}, DubinsSegment{c, lc}};
    cand.length = la + lb + lc;
    return cand;
}

std::optional<Candidate> word_lsl(const Pose& s, const Pose& g, double r) {
    const Point2 c1 = left_center(s, r);
    const Point2 c2 = left_center(g, r);
    const double phi = angle_of(c1, c2);
    const double straight = distance(c1, c2);
    const double t = mod_two_pi(phi - s.heading);
    const double q = mod_two_pi(g.heading - phi);
    return make_candidate(DubinsWord::LSL, 'L', r * t, 'S', straight, 'L', r * q);
}

std::optional<Candidate> word_rsr(const Pose& s, const Pose& g, double r) {
    const Point2 c1 = right_center(s, r);
    const Point2 c2 = right_center(g, r);
    const double phi = angle_of(c1, c2);
    const double straight = distance(c1, c2);
    const double t = mod_two_pi(s.heading - phi);
    const double q = mod_two_pi(phi - g.heading);
    return make_candidate(DubinsWord::RSR, 'R', r * t, 'S', straight, 'R', r * q);
}

std::optional<Candidate> word_lsr(const Pose& s, const Pose& g, double r) {
    const Point2 c1 = left_center(s, r);
    const Point2 c2 = right_center(g, r);
    const double dd = distance(c1, c2);
    if (dd < 2.0 * r) return std::nullopt;
    const double straight = std::sqrt(std::max(0.0, dd * dd - 4.0 * r * r));
    const double hu = angle_of(c1, c2) + std::atan2(2.0 * r, straight);
    const double t = mod_two_pi(hu - s.heading);
    const double q = mod_two_pi(hu - g.heading);
    return make_candidate(DubinsWord::LSR, 'L', r * t, 'S', straight, 'R', r * q);
}

std::optional<Candidate> word_rsl(const Pose& s, const Pose& g, double r) {
    const Point2 c1 = right_center(s, r);
    const Point2 c2 = left_center(g, r);
    const double dd = distance(c1, c2);
    if (dd < 2.0 * r) return std::nullopt;
    const double straight = std::sqrt(std::max(0.0, dd * dd - 4.0 * r * r));
    const double hu = angle_of(c1, c2) - std::atan2(2.0 * r, straight);
    const double t = mod_two_pi(s.heading - hu);
    const double q = mod_two_pi(g.heading - hu);
    return make_candidate(DubinsWord::RSL, 'R', r * t, 'S', straight, 'L', r * q);
}

// Three-arc words have two mirror-image middle circles; both are valid
// curvature-bounded paths, so each is scored and the shorter kept.
std::optional<Candidate> word_lrl(const Pose& s, const Pose& g, double r) {
    const Point2 c1 = left_center(s, r);
    const Point2 c2 = left_center(g, r);
    const double dd = distance(c1, c2);
    if (dd > 4.0 * r) return std::nullopt;
    const double phi = angle_of(c1, c2);
    const double gamma = std::acos(std::min(1.0, dd / (4.0 * r)));

    std::optional<Candidate> best;
    for (const double psi : {phi + gamma, phi - gamma}) {
        const Point2 mid{c1.x + 2.0 * r * std::cos(psi), c1.y + 2.0 * r * std::sin(psi)};
        const double t = mod_two_pi(psi - (s.heading - M_PI_2));
        const double p = mod_two_pi(psi + M_PI - angle_of(mid, c2));
        const double q = mod_two_pi((g.heading - M_PI_2) - angle_of(c2, mid));
        auto cand = make_candidate(DubinsWord::LRL, 'L', r * t, 'R', r * p, 'L', r * q);
        if (cand && (!best || cand->length < best->length)) best = cand;
    }
    return best;
}

std::optional<Candidate> word_rlr(const Pose& s, const Pose& g, double r) {
    const Point2 c1 = right_center(s, r);
    const Point2 c2 = right_center(g, r);
    const double dd = distance(c1, c2);
    if (dd > 4.0 * r) return std::nullopt;
    const double phi = angle_of(c1, c2);
    const double gamma = std::acos(std::min(1.0, dd / (4.0 * r)));

    std::optional<Candidate> best;
    for (const double psi : {phi + gamma, phi - gamma}) {
        const Point2 mid{c1.x + 2.0 * r * std::cos(psi), c1.y + 2.0 * r * std::sin(psi)};
        const double t = mod_two_pi((s.heading + M_PI_2) - psi);
        const double p = mod_two_pi(angle_of(mid, c2) - (psi + M_PI));
        const double q = mod_two_pi(angle_of(c2, mid) - (g.heading + M_PI_2));
        auto cand = make_candidate(DubinsWord::RLR, 'R', r * t, 'L', r * p, 'R', r * q);
        if (cand && (!best || cand->length < best->length)) best = cand;
    }
    return best;
}

Pose advance(const Pose& p, const DubinsSegment& seg, double s, double r) {
    if (seg.type == 'S') {
        return {p.x + s * std::cos(p.heading), p.y + s * std::sin(p.heading), p.heading};
    }
    const double delta = s / r;
    if (seg.type == 'L') {
        const double h = p.heading + delta;
        return {p.x + r * (std::sin(h) - std::sin(p.heading)),
                p.y + r * (std::cos(p.heading) - std::cos(h)), normalize_angle(h)};
    }
    const double h = p.heading - delta;
    return {p.x + r * (std::sin(p.heading) - std::sin(h)),
            p.y + r * (std::cos(h) - std::cos(p.heading)), normalize_angle(h)};
}

} // namespace

const char* to_string(DubinsWord word) {
    switch (word) {
        case DubinsWord::LSL: return "LSL";
        case DubinsWord::RSR: return "RSR";
        case DubinsWord::LSR: return "LSR";
        case DubinsWord::RSL: return "RSL";
        case DubinsWord::RLR: return "RLR";
        case DubinsWord::LRL: return "LRL";
    }
    return "?";
}

PrimitivePath shortest_dubins(const Pose& start, const Pose& end, double r_min,
                              double sample_spacing) {
    if (!(r_min > 0.0)) throw std::invalid_argument("shortest_dubins: r_min must be positive");
    if (!(sample_spacing > 0.0))
        throw std::invalid_argument("shortest_dubins: sample_spacing must be positive");

    const Pose s = make_pose(start.x, start.y, start.heading);
    const Pose g = make_pose(end.x, end.y, end.heading);

    std::optional<Candidate> best;
    for (const auto& cand : {word_lsl(s, g, r_min), word_rsr(s, g, r_min), word_lsr(s, g, r_min),
                             word_rsl(s, g, r_min), word_rlr(s, g, r_min), word_lrl(s, g, r_min)}) {
        if (cand && (!best || cand->length < best->length)) best = cand;
    }
    // LSL and RSR always produce a candidate, so best is set.

    PrimitivePath path;
    path.start = s;
    path.end = g;
    path.word = best->word;
    path.segments = best->segments;
    path.length = best->length;

    const int steps =
        std::max(1, static_cast<int>(std::ceil(path.length / sample_spacing - 1e-12)));
    path.samples.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        double remaining = path.length * static_cast<double>(i) / static_cast<double>(steps);
        Pose p = s;
        for (const DubinsSegment& seg : path.segments) {
            const double travel = std::min(remaining, seg.length);
            if (travel > 0.0) p = advance(p, seg, travel, r_min);
            remaining -= travel;
            if (remaining <= 0.0) break;
        }
        path.samples.push_back(p);
    }
    return path;
}

std::vector<PrimitivePath> feasible_primitives(const Pose& pose, const PrimitiveParams& params,
                                               const Extent& workspace) {
    if (params.count < 1) throw std::invalid_argument("feasible_primitives: count must be >= 1");

    std::vector<PrimitivePath> out;
    out.reserve(static_cast<std::size_t>(params.count));
    for (int i = 0; i < params.count; ++i) {
        const double rel =
            params.count == 1
                ? 0.0
                : -params.fan_halfwidth +
                      2.0 * params.fan_halfwidth * static_cast<double>(i) /
                          static_cast<double>(params.count - 1);
        const double dir = pose.heading + rel;
        const Pose terminal = make_pose(pose.x + params.arc_length * std::cos(dir),
                                        pose.y + params.arc_length * std::sin(dir), dir);
        PrimitivePath path =
            shortest_dubins(pose, terminal, params.turn_radius, params.sample_spacing);

        bool inside = true;
        for (const Pose& sample : path.samples) {
            if (!workspace.contains(sample.position())) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(std::move(path));
    }
    return out;
}

std::vector<PrimitivePath> primitive_set(const Pose& pose, const PrimitiveParams& params,
                                         const Extent& workspace) {
    std::vector<PrimitivePath> out = feasible_primitives(pose, params, workspace);
    if (out.empty())
        throw std::runtime_error("primitive_set: no feasible primitives from this pose");
    return out;
}

} // namespace pmcts
