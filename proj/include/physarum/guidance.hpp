#pragma once

#include <cstdint>
#include <optional>

#include "physarum/arena.hpp"
#include "physarum/fields.hpp"
#include "physarum/geometry.hpp"
#include "physarum/rng.hpp"
#include "physarum/swarm.hpp"

namespace physarum {

// How the controller nudges the swarm toward the current target waypoint.
enum class StimulusMode {
    attract,  // deposit extra trail at the target cell every step
    repel,    // illuminate everything outside a square around the target
};

const char* to_string(StimulusMode mode);
std::optional<StimulusMode> stimulus_mode_from_string(std::string_view name);

struct GuidanceParams {
    StimulusMode mode = StimulusMode::attract;
    int control_interval = 50;        // scheduler steps between controller looks
    double attractant_weight = 10.0;  // deposit per step at the target (attract)
    int mask_side = 61;               // unlit square side, odd (repel)
    double node_spacing = 25.0;       // guide-node resample interval (cells)
    double completion_radius = 10.0;  // goal capture distance for the centroid
    long max_steps = 100000;          // guided-step budget after warm-up
    int warmup_steps = 1000;          // unguided steps to let the blob form
    // optional corruption of the stimulus location (off by default)
    bool stimulus_noise = false;
    double stimulus_noise_sigma = 0.0;
};

// The authored path resampled into guide nodes at most node_spacing apart.
// The controller steers node to node, so the stimulus always sits within
// sensing reach of the swarm regardless of how sparsely the path file
// places its waypoints. Every authored waypoint appears among the nodes
// (segments are subdivided, never re-routed), and the node list is a pure
// function of the path and the spacing.
struct GuidePath {
    std::vector<CellCoord> nodes;
    PathSpec source;  // authored polyline, kept for distance-to-path metrics

    Vec2 node_point(std::size_t i) const {
        return {static_cast<double>(nodes[i].x), static_cast<double>(nodes[i].y)};
    }
};

// Subdivides each polyline segment into equal pieces no longer than
// node_spacing and rounds the interpolated points to lattice cells,
// dropping consecutive duplicates produced by rounding.
GuidePath resample_path(const PathSpec& path, double node_spacing);

// Mutable controller bookkeeping for one run. target_index starts at 1: the
// first stimulus is the guide node after the start, and the segment behind
// the blob is nodes[target_index - 1] -> nodes[target_index].
struct ControllerState {
    std::size_t target_index = 1;
    long steps_since_control = 0;
    bool completed = false;
    std::optional<long> completion_step;
};

// Mean particle position. pre: population non-empty.
Vec2 centroid(const Population& pop);

// Advances the target by one when the swarm centroid is strictly closer to
// the current target node than to the node behind it — i.e. the blob has
// crossed the midline of the segment it is traversing, so the stimulus hops
// to the next node and the measured distance-to-target jumps up. Ties and
// the final node leave the target unchanged.
void maybe_advance_target(ControllerState& state, Vec2 c, const GuidePath& path);

// Projects the current stimulus for one scheduler step: attract deposits
// attractant_weight at the target cell (illumination stays off); repel
// re-centers the unlit mask square on the target (no deposits). With
// stimulus_noise, the stimulus location is jittered by a rounded Gaussian
// (consumes one gaussian_pair per call); an attractant jitter that lands on
// an untraversable cell is skipped for that step.
void apply_stimulus(const ControllerState& state, const GuidanceParams& params,
                    const Arena& arena, TrailField& trail, IlluminationField& light,
                    const GuidePath& path, Rng& rng);

// Latches completion the first time the centroid is within
// completion_radius (inclusive) of the final node while it is the target.
// Returns the completed flag.
bool check_completion(ControllerState& state, Vec2 c, const GuidePath& path,
                      const GuidanceParams& params, long step);

}  // namespace physarum
