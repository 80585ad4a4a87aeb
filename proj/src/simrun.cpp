#include "physarum/simrun.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

namespace physarum {

namespace {

std::string fmt_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// shortest round-trip-ish form, used for parameter values like 0.001
std::string fmt_compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("failed writing output file: " + path.string());
    }
}

std::string trajectory_csv(const ErrorTrace& trace) {
    std::string out = "step,cx,cy,target_index\n";
    for (const TraceSample& s : trace.samples) {
        out += std::to_string(s.step) + "," + fmt_fixed(s.centroid.x) + "," +
               fmt_fixed(s.centroid.y) + "," + std::to_string(s.target_index) + "\n";
    }
    return out;
}

std::string trace_csv(const ErrorTrace& trace) {
    std::string out = "step,dist_target,dist_path\n";
    for (const TraceSample& s : trace.samples) {
        out += std::to_string(s.step) + "," + fmt_fixed(s.dist_to_target) + "," +
               fmt_fixed(s.dist_to_path) + "\n";
    }
    return out;
}

}  // namespace

std::string summary_csv_header() {
    return "mode,pid,oscillatory,seed,completed,traversal_steps,mean_path_error,"
           "max_path_error,sawtooth_score,orbit_radius\n";
}

std::string summary_csv_row(StimulusMode mode, double reset_probability, bool oscillatory,
                            std::uint64_t seed, const RunSummary& s) {
    std::string row;
    row += to_string(mode);
    row += ",";
    row += fmt_compact(reset_probability);
    row += ",";
    row += fmt_bool(oscillatory);
    row += ",";
    row += std::to_string(seed);
    row += ",";
    row += fmt_bool(s.completed);
    row += ",";
    if (s.traversal_steps) row += std::to_string(*s.traversal_steps);
    row += ",";
    row += fmt_fixed(s.mean_path_error);
    row += ",";
    row += fmt_fixed(s.max_path_error);
    row += ",";
    row += fmt_fixed(s.sawtooth_score);
    row += ",";
    if (s.orbit_radius) row += fmt_fixed(*s.orbit_radius);
    row += "\n";
    return row;
}

std::string render_frame(const Arena& arena, const TrailField& trail,
                         const IlluminationField& light, const Population& pop,
                         const GuidePath& path, const ControllerState& state) {
    const int w = arena.width();
    const int h = arena.height();
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    const std::size_t header = out.size();
    out.resize(header + static_cast<std::size_t>(w) * h * 3, '\0');
    auto* px = reinterpret_cast<unsigned char*>(out.data() + header);
    auto at = [&](int x, int y) { return px + (static_cast<std::size_t>(y) * w + x) * 3; };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            unsigned char r, g, b;
            if (arena.is_obstacle(x, y)) {
                r = g = b = 128;
            } else {
                long grey = std::lround(trail.value(x, y) * 8.0);
                if (grey > 255) grey = 255;
                r = g = b = static_cast<unsigned char>(grey);
            }
            if (light.is_illuminated(x, y)) {
                r = static_cast<unsigned char>(std::min(255, r + 64));
            }
            auto* p = at(x, y);
            p[0] = r;
            p[1] = g;
            p[2] = b;
        }
    }

    // ideal route, drawn cell by cell
    auto paint_segment = [&](CellCoord a, CellCoord b) {
        int x = a.x, y = a.y;
        const int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
        const int sx = a.x < b.x ? 1 : -1;
        const int sy = a.y < b.y ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            if (x >= 0 && x < w && y >= 0 && y < h) {
                auto* p = at(x, y);
                p[0] = 0;
                p[1] = 255;
                p[2] = 0;
            }
            if (x == b.x && y == b.y) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y += sy;
            }
        }
    };
    for (std::size_t i = 0; i + 1 < path.source.waypoints.size(); ++i) {
        paint_segment(path.source.waypoints[i], path.source.waypoints[i + 1]);
    }

    for (const Particle& p : pop.particles()) {
        const CellCoord c = containing_cell(p.pos);
        auto* q = at(c.x, c.y);
        q[0] = 0;
        q[1] = 0;
        q[2] = 255;
    }

    if (state.target_index < path.nodes.size()) {
        const CellCoord t = path.nodes[state.target_index];
        auto* p = at(t.x, t.y);
        p[0] = p[1] = p[2] = 255;
    }
    return out;
}

RunResult run(const RunConfig& config, const Arena& arena, const PathSpec& path) {
    assert(path.waypoints.size() >= 2);
    const GuidanceParams& g = config.guidance;
    SwarmParams swarm = config.swarm;
    const GuidePath guide = resample_path(path, g.node_spacing);

    Rng rng(config.seed);
    TrailField trail(arena.width(), arena.height());
    IlluminationField light(arena.width(), arena.height());
    Population pop = Population::inoculate(arena, path.waypoints.front(),
                                           config.particle_count, rng);
    ControllerState state;
    ErrorTrace trace;

    const bool writing = !config.out_dir.empty();
    const std::filesystem::path out_dir(config.out_dir);
    if (writing) std::filesystem::create_directories(out_dir);
    long last_frame_step = -1;
    auto maybe_frame = [&](long step, bool force) {
        if (!writing || config.frame_every <= 0) return;
        if (!force && step % config.frame_every != 0) return;
        if (step == last_frame_step) return;
        char name[32];
        std::snprintf(name, sizeof name, "frame_%08ld.ppm", step);
        write_file(out_dir / name, render_frame(arena, trail, light, pop, guide, state));
        last_frame_step = step;
    };

    long abs_step = 0;
    for (int i = 0; i < g.warmup_steps; ++i) {
        step_population(pop, arena, trail, light, swarm, rng);
        ++abs_step;
        maybe_frame(abs_step, false);
    }

    const long guidance_start = abs_step;
    long guided = 0;
    while (guided < g.max_steps) {
        apply_stimulus(state, g, arena, trail, light, guide, rng);
        step_population(pop, arena, trail, light, swarm, rng);
        ++abs_step;
        ++guided;
        if (++state.steps_since_control >= g.control_interval) {
            state.steps_since_control = 0;
            const Vec2 c = centroid(pop);
            record_sample(trace, abs_step, c, state, guide);
            maybe_advance_target(state, c, guide);
            check_completion(state, c, guide, g, abs_step);
        }
        maybe_frame(abs_step, false);
        if (state.completed && abs_step - *state.completion_step >= config.post_completion_grace) {
            break;
        }
    }
    maybe_frame(abs_step, true);

    RunResult result;
    result.summary = summarize(trace, state.completion_step, guidance_start);
    result.final_centroid = centroid(pop);
    result.total_steps = abs_step;

    if (writing) {
        write_file(out_dir / "trajectory.csv", trajectory_csv(trace));
        write_file(out_dir / "trace.csv", trace_csv(trace));
        write_file(out_dir / "summary.csv",
                   summary_csv_header() +
                       summary_csv_row(g.mode, swarm.reset_probability, swarm.oscillatory,
                                       config.seed, result.summary));
    }
    result.trace = std::move(trace);
    return result;
}

RunResult run(const RunConfig& config) {
    const ArenaFile af = load_arena_file(config.arena_path);
    return run(config, af.arena, af.path);
}

namespace {

struct RunOutcome {
    std::optional<RunResult> result;
    std::string error;
};

std::vector<RunOutcome> run_many_outcomes(const std::vector<RunConfig>& configs, int threads) {
    // load every distinct arena once; runs only read it
    std::unordered_map<std::string, ArenaFile> arenas;
    for (const RunConfig& c : configs) {
        if (!arenas.contains(c.arena_path)) {
            arenas.emplace(c.arena_path, load_arena_file(c.arena_path));
        }
    }

    std::vector<RunOutcome> outcomes(configs.size());
    auto work_one = [&](std::size_t i) {
        const ArenaFile& af = arenas.at(configs[i].arena_path);
        try {
            outcomes[i].result = run(configs[i], af.arena, af.path);
        } catch (const std::exception& e) {
            outcomes[i].error = e.what();
        }
    };

    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, std::min<int>(n, static_cast<int>(configs.size())));
    if (n <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) work_one(i);
        return outcomes;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= configs.size()) return;
                work_one(i);
            }
        });
    }
    for (auto& t : pool) t.join();
    return outcomes;
}

struct Stats {
    double mean = 0.0;
    double sd = 0.0;
};

Stats population_stats(const std::vector<double>& values) {
    Stats s;
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(var / static_cast<double>(values.size()));
    return s;
}

}  // namespace

std::vector<RunResult> run_many(const std::vector<RunConfig>& configs, int threads) {
    auto outcomes = run_many_outcomes(configs, threads);
    std::vector<RunResult> results;
    results.reserve(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].error.empty()) {
            throw std::runtime_error("run " + std::to_string(i) + " failed: " +
                                     outcomes[i].error);
        }
        results.push_back(std::move(*outcomes[i].result));
    }
    return results;
}

SweepResult sweep(const SweepConfig& config) {
    std::vector<RunConfig> jobs;
    std::vector<SweepRow> rows;
    for (const StimulusMode mode : config.modes) {
        for (const double pid : config.reset_probabilities) {
            for (const bool osc : config.oscillatory_values) {
                for (int s = 0; s < config.seeds_per_cell; ++s) {
                    RunConfig rc = config.base;
                    rc.guidance.mode = mode;
                    rc.swarm.reset_probability = pid;
                    rc.swarm.oscillatory = osc;
                    rc.seed = config.base.seed + static_cast<std::uint64_t>(s);
                    rc.out_dir.clear();  // sweep artifacts are the CSVs only
                    rc.frame_every = 0;
                    jobs.push_back(std::move(rc));
                    rows.push_back(SweepRow{mode, pid, osc, jobs.back().seed, {}, {}});
                }
            }
        }
    }

    const auto outcomes = run_many_outcomes(jobs, config.threads);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].result) {
            rows[i].summary = outcomes[i].result->summary;
        } else {
            rows[i].error = outcomes[i].error;
        }
    }

    SweepResult result;
    result.rows = std::move(rows);
    const int per_cell = config.seeds_per_cell;
    for (std::size_t base = 0; base + per_cell <= result.rows.size();
         base += static_cast<std::size_t>(per_cell)) {
        const SweepRow& first = result.rows[base];
        SweepCell cell;
        cell.mode = first.mode;
        cell.reset_probability = first.reset_probability;
        cell.oscillatory = first.oscillatory;
        cell.runs = per_cell;
        std::vector<double> traversals;
        std::vector<double> errors;
        for (int s = 0; s < per_cell; ++s) {
            const SweepRow& row = result.rows[base + static_cast<std::size_t>(s)];
            if (!row.error.empty()) continue;
            errors.push_back(row.summary.mean_path_error);
            if (row.summary.completed) {
                ++cell.completed;
                traversals.push_back(static_cast<double>(*row.summary.traversal_steps));
            }
        }
        if (!traversals.empty()) {
            const Stats st = population_stats(traversals);
            cell.traversal_mean = st.mean;
            cell.traversal_sd = st.sd;
        }
        if (!errors.empty()) {
            const Stats st = population_stats(errors);
            cell.path_error_mean = st.mean;
            cell.path_error_sd = st.sd;
        }
        result.cells.push_back(cell);
    }

    if (!config.base.out_dir.empty()) {
        const std::filesystem::path out_dir(config.base.out_dir);
        std::filesystem::create_directories(out_dir);
        std::string runs_csv = summary_csv_header();
        runs_csv.pop_back();  // re-open the header line to append the error column
        runs_csv += ",error\n";
        for (const SweepRow& row : result.rows) {
            std::string line = summary_csv_row(row.mode, row.reset_probability,
                                               row.oscillatory, row.seed, row.summary);
            line.pop_back();
            std::string error = row.error;  // keep the error cell comma/newline free
            for (char& c : error) {
                if (c == ',') c = ';';
                if (c == '\n' || c == '\r') c = ' ';
            }
            line += "," + error + "\n";
            runs_csv += line;
        }
        write_file(out_dir / "sweep_runs.csv", runs_csv);

        std::string agg_csv =
            "mode,pid,oscillatory,runs,completed,traversal_steps_mean,traversal_steps_sd,"
            "path_error_mean,path_error_sd\n";
        for (const SweepCell& cell : result.cells) {
            agg_csv += to_string(cell.mode);
            agg_csv += ",";
            agg_csv += fmt_compact(cell.reset_probability);
            agg_csv += ",";
            agg_csv += fmt_bool(cell.oscillatory);
            agg_csv += ",";
            agg_csv += std::to_string(cell.runs);
            agg_csv += ",";
            agg_csv += std::to_string(cell.completed);
            agg_csv += ",";
            if (cell.traversal_mean) agg_csv += fmt_fixed(*cell.traversal_mean);
            agg_csv += ",";
            if (cell.traversal_sd) agg_csv += fmt_fixed(*cell.traversal_sd);
            agg_csv += ",";
            if (cell.path_error_mean) agg_csv += fmt_fixed(*cell.path_error_mean);
            agg_csv += ",";
            if (cell.path_error_sd) agg_csv += fmt_fixed(*cell.path_error_sd);
            agg_csv += "\n";
        }
        write_file(out_dir / "sweep_aggregates.csv", agg_csv);
    }
    return result;
}

}  // namespace physarum
