// Command-line front end: single guided runs, parameter sweeps, and arena
// file validation.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "physarum/simrun.hpp"

namespace {

using namespace physarum;

void print_summary(const RunConfig& config, const RunResult& result) {
    const RunSummary& s = result.summary;
    std::printf("mode=%s pid=%g oscillatory=%s seed=%llu\n",
                to_string(config.guidance.mode), config.swarm.reset_probability,
                config.swarm.oscillatory ? "true" : "false",
                static_cast<unsigned long long>(config.seed));
    std::printf("completed=%s", s.completed ? "true" : "false");
    if (s.traversal_steps) {
        std::printf(" traversal_steps=%ld", *s.traversal_steps);
    }
    std::printf(" total_steps=%ld\n", result.total_steps);
    std::printf("mean_path_error=%.3f max_path_error=%.3f sawtooth_score=%.3f",
                s.mean_path_error, s.max_path_error, s.sawtooth_score);
    if (s.orbit_radius) {
        std::printf(" orbit_radius=%.3f", *s.orbit_radius);
    }
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physarum: guided multi-agent blob simulator"};
    app.require_subcommand(1);

    RunConfig config;
    std::string mode_name = "attract";
    bool no_oscillatory = false;

    auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--arena", config.arena_path, "arena file")->required();
        cmd->add_option("--seed", config.seed, "run seed");
        cmd->add_option("--particles", config.particle_count, "population size")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--warmup", config.guidance.warmup_steps,
                        "unguided steps before guidance starts")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--control-interval", config.guidance.control_interval,
                        "steps between controller looks")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--mask-side", config.guidance.mask_side,
                        "unlit square side for repel mode (odd, >= 3)");
        cmd->add_option("--node-spacing", config.guidance.node_spacing,
                        "guide-node resample interval along the path")
            ->check(CLI::Range(1.0, 10000.0));
        cmd->add_option("--attractant-weight", config.guidance.attractant_weight,
                        "deposit per step at the target in attract mode");
        cmd->add_option("--light-attenuation", config.swarm.light_attenuation,
                        "sensor gain on illuminated cells");
        cmd->add_option("--trail-damping", config.swarm.trail_damping,
                        "fraction of the 3x3 mean kept per diffusion pass")
            ->check(CLI::Range(1e-9, 1.0));
        cmd->add_option("--max-steps", config.guidance.max_steps, "guided step budget")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--grace", config.post_completion_grace,
                        "post-completion steps to keep sampling")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--completion-radius", config.guidance.completion_radius,
                        "goal capture distance");
        cmd->add_option("--noise-sigma", config.guidance.stimulus_noise_sigma,
                        "Gaussian sigma for stimulus location jitter (enables jitter)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "execute one guided run");
    add_run_options(run_cmd);
    run_cmd->add_option("--mode", mode_name, "stimulus mode: attract or repel")
        ->check(CLI::IsMember({"attract", "repel"}));
    run_cmd->add_option("--pid", config.swarm.reset_probability,
                        "momentum reset probability per step")
        ->check(CLI::Range(0.0, 1.0));
    run_cmd->add_flag("--no-oscillatory", no_oscillatory,
                      "blocked particles re-randomize instead of waiting");
    run_cmd->add_option("--frame-every", config.frame_every,
                        "write a PPM frame every N steps (0 = off)");
    run_cmd->add_option("--out", config.out_dir, "artifact directory");

    SweepConfig sweep_config;
    std::vector<double> pids;
    std::vector<std::string> mode_names;
    std::vector<bool> osc_values;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a mode x pid x seed grid");
    add_run_options(sweep_cmd);
    sweep_cmd->add_option("--pids", pids, "reset probabilities to sweep")->delimiter(',');
    sweep_cmd->add_option("--modes", mode_names, "stimulus modes to sweep")
        ->delimiter(',')
        ->check(CLI::IsMember({"attract", "repel"}));
    sweep_cmd->add_option("--oscillatory", osc_values,
                          "oscillatory flags to sweep (e.g. true,false)")
        ->delimiter(',');
    sweep_cmd->add_option("--seeds", sweep_config.seeds_per_cell, "seeds per grid cell")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--jobs", sweep_config.threads,
                          "parallel runs (0 = all hardware threads)");
    sweep_cmd->add_option("--out", config.out_dir, "artifact directory");

    std::string validate_path;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check an arena file");
    validate_cmd->add_option("--arena", validate_path, "arena file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            const ArenaFile af = load_arena_file(validate_path);
            std::size_t obstacle_count = af.arena.obstacle_cells().size();
            std::printf("ok: %dx%d arena, %zu obstacle cells, %zu waypoints\n",
                        af.arena.width(), af.arena.height(), obstacle_count,
                        af.path.waypoints.size());
            return 0;
        }

        if (config.guidance.stimulus_noise_sigma > 0.0) {
            config.guidance.stimulus_noise = true;
        }

        if (run_cmd->parsed()) {
            config.guidance.mode = *stimulus_mode_from_string(mode_name);
            config.swarm.oscillatory = !no_oscillatory;
            const RunResult result = run(config);
            print_summary(config, result);
            return 0;
        }

        // sweep
        sweep_config.base = config;
        if (!pids.empty()) sweep_config.reset_probabilities = pids;
        if (!mode_names.empty()) {
            sweep_config.modes.clear();
            for (const auto& name : mode_names) {
                sweep_config.modes.push_back(*stimulus_mode_from_string(name));
            }
        }
        if (!osc_values.empty()) {
            sweep_config.oscillatory_values.assign(osc_values.begin(), osc_values.end());
        }
        const SweepResult result = sweep(sweep_config);
        int failed = 0;
        for (const SweepRow& row : result.rows) {
            if (!row.error.empty()) {
                ++failed;
                std::fprintf(stderr, "run failed (mode=%s pid=%g seed=%llu): %s\n",
                             to_string(row.mode), row.reset_probability,
                             static_cast<unsigned long long>(row.seed), row.error.c_str());
            }
        }
        std::printf("sweep: %zu runs, %zu cells, %d failed\n", result.rows.size(),
                    result.cells.size(), failed);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
