#include "physarum/guidance.hpp"

#include <cassert>
#include <cmath>

namespace physarum {

GuidePath resample_path(const PathSpec& path, double node_spacing) {
    assert(path.waypoints.size() >= 2);
    assert(node_spacing > 0.0);
    GuidePath guide;
    guide.source = path;
    guide.nodes.push_back(path.waypoints.front());
    for (std::size_t w = 1; w < path.waypoints.size(); ++w) {
        const Vec2 a{static_cast<double>(path.waypoints[w - 1].x),
                     static_cast<double>(path.waypoints[w - 1].y)};
        const Vec2 b{static_cast<double>(path.waypoints[w].x),
                     static_cast<double>(path.waypoints[w].y)};
        const double len = distance(a, b);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / node_spacing)));
        for (int i = 1; i <= pieces; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(pieces);
            const CellCoord cell{
                static_cast<std::int32_t>(std::lround(a.x + t * (b.x - a.x))),
                static_cast<std::int32_t>(std::lround(a.y + t * (b.y - a.y)))};
            if (!(cell == guide.nodes.back())) {
                guide.nodes.push_back(cell);
            }
        }
    }
    return guide;
}

const char* to_string(StimulusMode mode) {
    return mode == StimulusMode::attract ? "attract" : "repel";
}

std::optional<StimulusMode> stimulus_mode_from_string(std::string_view name) {
    if (name == "attract") return StimulusMode::attract;
    if (name == "repel") return StimulusMode::repel;
    return std::nullopt;
}

Vec2 centroid(const Population& pop) {
    assert(pop.size() > 0);
    Vec2 sum{0.0, 0.0};
    for (const Particle& p : pop.particles()) {
        sum = sum + p.pos;
    }
    const double inv = 1.0 / static_cast<double>(pop.size());
    return {sum.x * inv, sum.y * inv};
}

void maybe_advance_target(ControllerState& state, Vec2 c, const GuidePath& path) {
    assert(state.target_index >= 1 && state.target_index < path.nodes.size());
    if (state.target_index + 1 >= path.nodes.size()) return;  // already at the goal
    const double to_target = distance(c, path.node_point(state.target_index));
    const double to_previous = distance(c, path.node_point(state.target_index - 1));
    if (to_target < to_previous) {
        ++state.target_index;
    }
}

void apply_stimulus(const ControllerState& state, const GuidanceParams& params,
                    const Arena& arena, TrailField& trail, IlluminationField& light,
                    const GuidePath& path, Rng& rng) {
    CellCoord at = path.nodes[state.target_index];
    if (params.stimulus_noise) {
        const auto [gx, gy] = rng.gaussian_pair();
        at.x += static_cast<int>(std::lround(gx * params.stimulus_noise_sigma));
        at.y += static_cast<int>(std::lround(gy * params.stimulus_noise_sigma));
    }
    if (params.mode == StimulusMode::attract) {
        if (arena.is_traversable(at)) {
            trail.deposit(at, params.attractant_weight);
        }
        // attract runs never illuminate; nothing to clear because nothing
        // ever turns the light on in this mode
        assert(!light.active());
    } else {
        // idempotent unless the target (or jitter) moved the square, so the
        // mask effectively persists until the controller advances
        light.set_mask(at, params.mask_side);
    }
}

bool check_completion(ControllerState& state, Vec2 c, const GuidePath& path,
                      const GuidanceParams& params, long step) {
    if (state.completed) return true;
    if (state.target_index + 1 != path.nodes.size()) return false;
    const double d = distance(c, path.node_point(state.target_index));
    if (d <= params.completion_radius) {
        state.completed = true;
        state.completion_step = step;
    }
    return state.completed;
}

}  // namespace physarum
