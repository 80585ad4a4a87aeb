#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "physarum/arena.hpp"
#include "physarum/fields.hpp"
#include "physarum/geometry.hpp"
#include "physarum/guidance.hpp"
#include "physarum/metrics.hpp"
#include "physarum/rng.hpp"
#include "physarum/swarm.hpp"

namespace physarum {

// Trail persistence used for guided runs: the fraction of the 3x3 mean kept
// per diffusion pass. The short-range operator default (0.1) keeps deposits
// visible for barely a step, which suits isolated-field analysis but starves
// a blob-scale collective of usable gradients; 0.9 is the calibrated value
// at which a 2000-particle blob is reliably towable at the default stimulus
// weight while trails still decay within a few dozen steps.
inline constexpr double kGuidedTrailDamping = 0.9;

// SwarmParams preset for guided runs (model defaults + calibrated damping).
inline SwarmParams guided_swarm_defaults() {
    SwarmParams params;
    params.trail_damping = kGuidedTrailDamping;
    return params;
}

// Everything needed to reproduce one guided run exactly.
struct RunConfig {
    std::string arena_path;
    SwarmParams swarm = guided_swarm_defaults();
    GuidanceParams guidance;
    int particle_count = 2000;
    std::uint64_t seed = 1;
    // artifact control: when out_dir is empty nothing is written
    std::string out_dir;
    long frame_every = 0;  // PPM frame cadence in steps; 0 disables frames
    // post-completion steps during which stimulation and sampling continue
    long post_completion_grace = 2000;
};

struct RunResult {
    RunSummary summary;
    ErrorTrace trace;
    Vec2 final_centroid;
    long total_steps = 0;  // scheduler steps executed, warm-up included
};

// Executes one run: inoculate at the first waypoint, warm up unguided, then
// guided steps (stimulus every step, controller look every control_interval
// steps) until the goal is held for the grace window or the step budget is
// exhausted (which is a normal, non-completed outcome). Writes
// trajectory.csv, trace.csv, summary.csv and frames under out_dir when set.
RunResult run(const RunConfig& config);
RunResult run(const RunConfig& config, const Arena& arena, const PathSpec& path);

// Runs independent configs, possibly in parallel; results are positionally
// matched to the inputs and identical to sequential execution.
std::vector<RunResult> run_many(const std::vector<RunConfig>& configs, int threads = 0);

// Grid sweep over stimulus mode x reset probability x oscillatory flag, with
// seeds_per_cell seeds (base.seed + 0 .. base.seed + seeds_per_cell - 1,
// the same seed list in every cell).
struct SweepConfig {
    RunConfig base;
    std::vector<StimulusMode> modes{StimulusMode::attract, StimulusMode::repel};
    std::vector<double> reset_probabilities{0.001, 0.01, 0.05};
    std::vector<bool> oscillatory_values{true};
    int seeds_per_cell = 5;
    int threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
    StimulusMode mode = StimulusMode::attract;
    double reset_probability = 0.0;
    bool oscillatory = true;
    std::uint64_t seed = 0;
    RunSummary summary;
    std::string error;  // non-empty when this run failed; the sweep continues
};

// Per-cell aggregates: traversal stats over completed runs, path-error stats
// over all runs that did not fail outright. Standard deviation is the
// population form (divide by n).
struct SweepCell {
    StimulusMode mode = StimulusMode::attract;
    double reset_probability = 0.0;
    bool oscillatory = true;
    int runs = 0;
    int completed = 0;
    std::optional<double> traversal_mean;
    std::optional<double> traversal_sd;
    std::optional<double> path_error_mean;
    std::optional<double> path_error_sd;
};

struct SweepResult {
    std::vector<SweepRow> rows;    // grid order: mode, pid, oscillatory, seed
    std::vector<SweepCell> cells;  // grid order: mode, pid, oscillatory
};

// Runs the whole grid (individual failures are recorded per row, not
// raised). Writes sweep_runs.csv and sweep_aggregates.csv under base.out_dir
// when set.
SweepResult sweep(const SweepConfig& config);

// Renders the current state to a binary PPM (P6, maxval 255, one pixel per
// cell): background grey from the trail (value * 8, clamped), obstacles
// solid 128-grey, illuminated cells +64 on the red channel, path polyline
// green, particles blue, the target node white.
std::string render_frame(const Arena& arena, const TrailField& trail,
                         const IlluminationField& light, const Population& pop,
                         const GuidePath& path, const ControllerState& state);

// CSV schema helpers (also used by tests to pin the formats).
std::string summary_csv_header();
std::string summary_csv_row(StimulusMode mode, double reset_probability, bool oscillatory,
                            std::uint64_t seed, const RunSummary& summary);

}  // namespace physarum
