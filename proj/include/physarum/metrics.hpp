#pragma once

#include <optional>
#include <vector>

#include "physarum/arena.hpp"
#include "physarum/geometry.hpp"
#include "physarum/guidance.hpp"
#include "physarum/swarm.hpp"

namespace physarum {

// One controller-tick observation.
struct TraceSample {
    long step = 0;                 // absolute scheduler step of the tick
    Vec2 centroid;
    std::size_t target_index = 0;  // target at sampling time (pre-advance)
    double dist_to_target = 0.0;   // centroid to target guide node
    double dist_to_path = 0.0;     // centroid to the ideal polyline
};

// Tick-by-tick error record of one run; steps strictly increase.
struct ErrorTrace {
    std::vector<TraceSample> samples;
};

// Appends one observation. pre: step exceeds the last recorded step.
void record_sample(ErrorTrace& trace, long step, Vec2 c, const ControllerState& state,
                   const GuidePath& path);

// Headline numbers for one run.
struct RunSummary {
    bool completed = false;
    // guided steps from the end of warm-up to completion; present iff completed
    std::optional<long> traversal_steps;
    double mean_path_error = 0.0;
    double max_path_error = 0.0;
    // fraction of consecutive same-target sample pairs whose distance to the
    // target did not increase (1 = clean sawtooth decay)
    double sawtooth_score = 1.0;
    // mean distance from the goal over post-completion samples; present iff
    // any were recorded
    std::optional<double> orbit_radius;
};

// Reduces a trace. Path-error statistics and the sawtooth score cover the
// samples up to and including completion (the whole trace when the run never
// completed); orbit_radius covers the strictly-post-completion samples.
// guidance_start_step is the absolute step at which guided stepping began.
RunSummary summarize(const ErrorTrace& trace, std::optional<long> completion_step,
                     long guidance_start_step);

// Fraction of particles within 2x inoculation_radius of the centroid.
// pre: population non-empty.
double cohesion(const Population& pop, double inoculation_radius);

}  // namespace physarum
