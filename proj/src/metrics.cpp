#include "physarum/metrics.hpp"

#include <algorithm>
#include <cassert>

namespace physarum {

void record_sample(ErrorTrace& trace, long step, Vec2 c, const ControllerState& state,
                   const GuidePath& path) {
    assert(trace.samples.empty() || trace.samples.back().step < step);
    trace.samples.push_back(TraceSample{step, c, state.target_index,
                                        distance(c, path.node_point(state.target_index)),
                                        distance_to_path(path.source, c)});
}

RunSummary summarize(const ErrorTrace& trace, std::optional<long> completion_step,
                     long guidance_start_step) {
    RunSummary summary;
    summary.completed = completion_step.has_value();
    if (summary.completed) {
        summary.traversal_steps = *completion_step - guidance_start_step;
    }

    const auto& samples = trace.samples;
    std::size_t traversal_end = samples.size();  // one past the last traversal sample
    if (completion_step) {
        traversal_end = 0;
        while (traversal_end < samples.size() &&
               samples[traversal_end].step <= *completion_step) {
            ++traversal_end;
        }
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < traversal_end; ++i) {
        sum += samples[i].dist_to_path;
        summary.max_path_error = std::max(summary.max_path_error, samples[i].dist_to_path);
    }
    summary.mean_path_error = traversal_end > 0 ? sum / static_cast<double>(traversal_end) : 0.0;

    std::size_t same_target_pairs = 0;
    std::size_t non_increasing = 0;
    for (std::size_t i = 1; i < traversal_end; ++i) {
        if (samples[i].target_index != samples[i - 1].target_index) continue;
        ++same_target_pairs;
        if (samples[i].dist_to_target <= samples[i - 1].dist_to_target) ++non_increasing;
    }
    summary.sawtooth_score =
        same_target_pairs > 0
            ? static_cast<double>(non_increasing) / static_cast<double>(same_target_pairs)
            : 1.0;

    if (completion_step) {
        double orbit_sum = 0.0;
        std::size_t orbit_count = 0;
        for (std::size_t i = traversal_end; i < samples.size(); ++i) {
            orbit_sum += samples[i].dist_to_target;
            ++orbit_count;
        }
        if (orbit_count > 0) {
            summary.orbit_radius = orbit_sum / static_cast<double>(orbit_count);
        }
    }
    return summary;
}

double cohesion(const Population& pop, double inoculation_radius) {
    assert(pop.size() > 0);
    const Vec2 c = centroid(pop);
    const double limit = 2.0 * inoculation_radius;
    std::size_t inside = 0;
    for (const Particle& p : pop.particles()) {
        if (distance(p.pos, c) <= limit) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(pop.size());
}

}  // namespace physarum
