// Acceptance suite: ten scenario-level checks of the simulator and the
// guidance pipeline, each printed as one [PASS]/[FAIL] line. Exit status is
// the number of failed checks.
//
// The checks drive the library in process (no CLI subprocesses). Runs shared
// between checks — most prominently the obstacle-course sweep — execute once
// and are reused. `--criterion 5,7` restricts the suite; `--jobs N` sizes the
// worker pool for independent runs (default: hardware concurrency).
//
// Scenario configuration (particle counts, stimulus weights, node spacing)
// is part of this file on purpose: each check names the regime in which the
// property it asserts is expected to hold, and the fixtures are calibrated
// together with these numbers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "physarum/arena.hpp"
#include "physarum/fields.hpp"
#include "physarum/guidance.hpp"
#include "physarum/metrics.hpp"
#include "physarum/rng.hpp"
#include "physarum/simrun.hpp"
#include "physarum/swarm.hpp"

namespace {

using namespace physarum;
namespace fs = std::filesystem;

#ifndef PHYSARUM_ARENA_DIR
#define PHYSARUM_ARENA_DIR "arenas"
#endif

struct Options {
    std::set<int> criteria;  // empty = all
    int jobs = 0;            // run_many pool size; 0 = hardware concurrency
    std::string arena_dir = PHYSARUM_ARENA_DIR;
    std::string work_dir;  // scratch space for checks that need artifacts
};

std::string arena_path(const Options& opt, const char* name) {
    return opt.arena_dir + "/" + name;
}

// ---------------------------------------------------------------------------
// Scenario configurations. Calibration notes:
//  * obstacle course runs use stimulus weight 15 / node spacing 30 — the
//    middle of the band where the attractant tows around 90-degree turns
//    without gluing the blob to the carrot;
//  * the terminal-orbiting check uses a 500-particle blob: the contrast it
//    asserts (momentum blobs keep milling around a reached goal, twitchy
//    blobs park) exists for small blobs, while a 2000-particle blob buries
//    the goal inside its own radius and parks regardless of momentum.
// ---------------------------------------------------------------------------

constexpr int kSeedsPerCell = 5;
constexpr double kLowReset = 0.001;
constexpr double kHighReset = 0.05;

RunConfig course_config(const Options& opt, StimulusMode mode, double reset_probability,
                        std::uint64_t seed, bool oscillatory) {
    RunConfig cfg;
    cfg.arena_path = arena_path(opt, "obstacle-course.arena");
    cfg.swarm.reset_probability = reset_probability;
    cfg.swarm.oscillatory = oscillatory;
    cfg.guidance.mode = mode;
    cfg.guidance.attractant_weight = 15.0;
    cfg.guidance.node_spacing = 30.0;
    cfg.seed = seed;
    return cfg;
}

RunConfig corridor_config(const Options& opt, double reset_probability, std::uint64_t seed) {
    RunConfig cfg;
    cfg.arena_path = arena_path(opt, "corridor.arena");
    cfg.swarm.reset_probability = reset_probability;
    cfg.guidance.mode = StimulusMode::attract;
    cfg.guidance.attractant_weight = 15.0;
    cfg.guidance.node_spacing = 30.0;
    cfg.seed = seed;
    return cfg;
}

RunConfig orbit_config(const Options& opt, double reset_probability, std::uint64_t seed) {
    RunConfig cfg = corridor_config(opt, reset_probability, seed);
    cfg.particle_count = 500;
    cfg.guidance.attractant_weight = 10.0;
    return cfg;
}

RunConfig grating_config(const Options& opt, StimulusMode mode, std::uint64_t seed) {
    RunConfig cfg;
    cfg.arena_path = arena_path(opt, "channel-grating.arena");
    cfg.swarm.reset_probability = kHighReset;
    cfg.guidance.mode = mode;
    cfg.guidance.attractant_weight = 15.0;
    cfg.guidance.node_spacing = 30.0;
    cfg.seed = seed;
    return cfg;
}

// ---------------------------------------------------------------------------
// Shared run cache: checks declare the runs they need by key; the batch is
// executed once with run_many and results are handed back by key.
// ---------------------------------------------------------------------------

class RunCache {
  public:
    void need(const std::string& key, const RunConfig& cfg) {
        if (index_.count(key) == 0) {
            index_.emplace(key, configs_.size());
            configs_.push_back(cfg);
        }
    }

    void execute(int jobs) {
        if (!configs_.empty() && results_.empty()) results_ = run_many(configs_, jobs);
    }

    const RunResult& get(const std::string& key) const { return results_.at(index_.at(key)); }

    std::size_t size() const { return configs_.size(); }

  private:
    std::map<std::string, std::size_t> index_;
    std::vector<RunConfig> configs_;
    std::vector<RunResult> results_;
};

std::string course_key(StimulusMode mode, double pid, std::uint64_t seed, bool osc) {
    std::ostringstream out;
    out << "course/" << to_string(mode) << "/" << pid << "/" << (osc ? "osc" : "noosc") << "/"
        << seed;
    return out.str();
}

std::string orbit_key(double pid, std::uint64_t seed) {
    std::ostringstream out;
    out << "orbit/" << pid << "/" << seed;
    return out.str();
}

std::string grating_key(StimulusMode mode, std::uint64_t seed) {
    std::ostringstream out;
    out << "grating/" << to_string(mode) << "/" << seed;
    return out.str();
}

std::string sawtooth_key(std::uint64_t seed) { return "sawtooth/" + std::to_string(seed); }

// ---------------------------------------------------------------------------
// Evaluation helpers.
// ---------------------------------------------------------------------------

struct CheckResult {
    bool pass = false;
    std::string detail;
};

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Collects a per-seed summary field over one cell of cached course runs.
template <typename F>
std::vector<double> collect(const RunCache& cache, StimulusMode mode, double pid, bool osc,
                            F&& field) {
    std::vector<double> out;
    for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
        out.push_back(field(cache.get(course_key(mode, pid, s, osc)).summary));
    }
    return out;
}

std::vector<double> traversal_steps(const RunCache& cache, StimulusMode mode, double pid,
                                    bool osc) {
    return collect(cache, mode, pid, osc,
                   [](const RunSummary& s) { return static_cast<double>(*s.traversal_steps); });
}

std::vector<double> path_errors(const RunCache& cache, StimulusMode mode, double pid, bool osc) {
    return collect(cache, mode, pid, osc, [](const RunSummary& s) { return s.mean_path_error; });
}

int completed_count(const RunCache& cache, const std::function<std::string(std::uint64_t)>& key) {
    int n = 0;
    for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
        if (cache.get(key(s)).summary.completed) ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Check 1: unit exactness — diffusion closed forms, the full turn-rule
// table, and the occupancy bijection over a long run.
// ---------------------------------------------------------------------------

CheckResult check_unit_exactness(const Options&) {
    constexpr double kTol = 1e-12;

    // Uniform field: every interior cell of a constant field scales by
    // exactly damping (sum of nine equal neighbours / 9). Absorbing edges
    // scale by their in-bounds neighbour count / 9.
    {
        Arena arena(32, 24);
        TrailField field(32, 24);
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 32; ++x) field.deposit({x, y}, 4.0);
        field.diffuse(arena);  // default damping 0.1
        for (int y = 0; y < 24; ++y) {
            for (int x = 0; x < 32; ++x) {
                const int nx = (x > 0) + 1 + (x < 31);
                const int ny = (y > 0) + 1 + (y < 23);
                const double expect = 0.1 * (nx * ny * 4.0) / 9.0;
                if (std::fabs(field.value(x, y) - expect) > kTol) {
                    return {false, "uniform diffusion mismatch at " + std::to_string(x) + "," +
                                       std::to_string(y)};
                }
            }
        }
    }

    // Spike: a lone deposit of 9 becomes a 3x3 plateau of exactly 0.1 * 9 / 9
    // = 0.1, zero elsewhere.
    {
        Arena arena(32, 24);
        TrailField field(32, 24);
        field.deposit({16, 12}, 9.0);
        field.diffuse(arena);
        for (int y = 0; y < 24; ++y) {
            for (int x = 0; x < 32; ++x) {
                const bool ring = std::abs(x - 16) <= 1 && std::abs(y - 12) <= 1;
                const double expect = ring ? 0.1 : 0.0;
                if (std::fabs(field.value(x, y) - expect) > kTol) {
                    return {false, "spike diffusion mismatch at " + std::to_string(x) + "," +
                                       std::to_string(y)};
                }
            }
        }
    }

    // Turn rule: exhaustive over all ordering cases of the three readings
    // (values {0,1,2} cover every strict/tied arrangement). Expected:
    // strongest strictly ahead -> hold; weakest strictly ahead -> one coin
    // draw and a turn either way; otherwise turn toward the strictly
    // stronger side, holding on ties. Non-coin cases must consume no draws,
    // coin cases exactly one.
    {
        SwarmParams params;
        const double ra = params.rotation_angle_deg;
        int cases = 0;
        for (double l : {0.0, 1.0, 2.0}) {
            for (double f : {0.0, 1.0, 2.0}) {
                for (double r : {0.0, 1.0, 2.0}) {
                    Particle p;
                    p.pos = {5.0, 5.0};
                    p.heading_deg = 90.0;
                    Rng rng(7u);
                    Rng witness(7u);
                    turn(p, SensorReadings{l, f, r}, params, rng);
                    const double delta = p.heading_deg - 90.0;
                    const bool coin = f < l && f < r;
                    double expect = 0.0;
                    if (!coin && !(f > l && f > r)) {
                        if (l < r) expect = ra;
                        else if (r < l) expect = -ra;
                    }
                    if (coin) {
                        if (std::fabs(std::fabs(delta) - ra) > kTol) {
                            return {false, "coin case turned by unexpected angle"};
                        }
                        witness.next_double();  // the one permitted draw
                    } else if (std::fabs(delta - expect) > kTol) {
                        return {false, "turn table mismatch at l=" + fmt(l) + " f=" + fmt(f) +
                                           " r=" + fmt(r)};
                    }
                    if (rng.next_u64() != witness.next_u64()) {
                        return {false, "turn consumed an unexpected number of draws"};
                    }
                    ++cases;
                }
            }
        }
        if (cases != 27) return {false, "turn table enumeration incomplete"};
    }

    // Occupancy bijection: particle array and occupancy index stay mutually
    // consistent through every step of a long run.
    {
        Arena arena(120, 120);
        TrailField trail(120, 120);
        IlluminationField light(120, 120);
        Rng rng(11u);
        SwarmParams params = guided_swarm_defaults();
        Population pop = Population::inoculate(arena, {60, 60}, 1500, rng);
        if (!pop.check_invariants(arena, params.oscillatory)) {
            return {false, "occupancy invariants violated at inoculation"};
        }
        for (int step = 1; step <= 1000; ++step) {
            step_population(pop, arena, trail, light, params, rng);
            if (!pop.check_invariants(arena, params.oscillatory)) {
                return {false, "occupancy invariants violated at step " + std::to_string(step)};
            }
        }
    }

    return {true, "diffusion closed forms exact; turn table 27/27; bijection held for 1000 steps"};
}

// ---------------------------------------------------------------------------
// Check 2: determinism — identical config and seed produce byte-identical
// trajectory logs and final frames across two independent runs.
// ---------------------------------------------------------------------------

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::optional<fs::path> last_frame(const fs::path& dir) {
    std::optional<fs::path> best;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("frame_", 0) == 0 && (!best || name > best->filename().string())) {
            best = entry.path();
        }
    }
    return best;
}

CheckResult check_determinism(const Options& opt) {
    RunConfig cfg = corridor_config(opt, kHighReset, 42);
    cfg.guidance.max_steps = 3000;
    cfg.post_completion_grace = 0;
    cfg.frame_every = 1000;

    const fs::path base = fs::path(opt.work_dir) / "determinism";
    std::vector<RunConfig> pair(2, cfg);
    pair[0].out_dir = (base / "a").string();
    pair[1].out_dir = (base / "b").string();
    fs::create_directories(pair[0].out_dir);
    fs::create_directories(pair[1].out_dir);
    run_many(pair, 2);

    const std::string traj_a = read_file(base / "a" / "trajectory.csv");
    const std::string traj_b = read_file(base / "b" / "trajectory.csv");
    if (traj_a.empty() || traj_a != traj_b) {
        return {false, "trajectory logs differ between identical runs"};
    }
    const auto frame_a = last_frame(base / "a");
    const auto frame_b = last_frame(base / "b");
    if (!frame_a || !frame_b) return {false, "final frame missing"};
    if (frame_a->filename() != frame_b->filename() ||
        read_file(*frame_a) != read_file(*frame_b)) {
        return {false, "final frames differ between identical runs"};
    }
    return {true, "trajectory log (" + std::to_string(traj_a.size()) + " bytes) and final frame " +
                      frame_a->filename().string() + " byte-identical"};
}

// ---------------------------------------------------------------------------
// Check 3: blob formation — cohesion after the standard warm-up.
// ---------------------------------------------------------------------------

CheckResult check_blob_formation(const Options&) {
    const int count = 2000;
    const double radius = inoculation_radius(count);
    int good = 0;
    std::vector<double> values;
    for (std::uint64_t seed = 1; seed <= kSeedsPerCell; ++seed) {
        Arena arena(200, 200);
        TrailField trail(200, 200);
        IlluminationField light(200, 200);
        Rng rng(seed);
        SwarmParams params = guided_swarm_defaults();
        Population pop = Population::inoculate(arena, {100, 100}, count, rng);
        for (int i = 0; i < 1000; ++i) step_population(pop, arena, trail, light, params, rng);
        const double c = cohesion(pop, radius);
        values.push_back(c);
        if (c >= 0.9) ++good;
    }
    std::string detail = "cohesion after 1000 steps:";
    for (double v : values) detail += " " + fmt(v);
    detail += " (need >= 0.9 on >= 4/5 seeds)";
    return {good >= 4, detail};
}

// ---------------------------------------------------------------------------
// Check 4: sawtooth approach profile on the calibration corridor.
// ---------------------------------------------------------------------------

CheckResult check_sawtooth(const Options&, const RunCache& cache) {
    for (std::uint64_t seed = 1; seed <= kSeedsPerCell; ++seed) {
        const RunResult& run = cache.get(sawtooth_key(seed));
        if (!run.summary.completed) {
            return {false, "corridor run did not complete (seed " + std::to_string(seed) + ")"};
        }
        if (run.summary.sawtooth_score < 0.8) {
            return {false, "sawtooth score " + fmt(run.summary.sawtooth_score) + " < 0.8 (seed " +
                               std::to_string(seed) + ")"};
        }
        const auto& samples = run.trace.samples;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (samples[i].target_index > samples[i - 1].target_index &&
                samples[i].dist_to_target <= samples[i - 1].dist_to_target) {
                return {false, "target advance failed to increase the distance at step " +
                                   std::to_string(samples[i].step) + " (seed " +
                                   std::to_string(seed) + ")"};
            }
        }
    }
    std::string scores;
    for (std::uint64_t seed = 1; seed <= kSeedsPerCell; ++seed) {
        scores += " " + fmt(cache.get(sawtooth_key(seed)).summary.sawtooth_score);
    }
    return {true, "scores" + scores + "; every advance increased the target distance"};
}

// ---------------------------------------------------------------------------
// Check 5: repellent guidance is faster and more accurate than attractant,
// in both reset-probability cells.
// ---------------------------------------------------------------------------

CheckResult check_repel_faster(const Options&, const RunCache& cache) {
    std::string detail;
    for (double pid : {kLowReset, kHighReset}) {
        for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
            for (StimulusMode mode : {StimulusMode::attract, StimulusMode::repel}) {
                if (!cache.get(course_key(mode, pid, s, true)).summary.completed) {
                    return {false, std::string(to_string(mode)) + " run did not complete (pid " +
                                       fmt(pid) + ", seed " + std::to_string(s) + ")"};
                }
            }
        }
        const double t_repel = mean(traversal_steps(cache, StimulusMode::repel, pid, true));
        const double t_attract = mean(traversal_steps(cache, StimulusMode::attract, pid, true));
        const double e_repel = mean(path_errors(cache, StimulusMode::repel, pid, true));
        const double e_attract = mean(path_errors(cache, StimulusMode::attract, pid, true));
        if (!(t_repel < t_attract)) {
            return {false, "repel not faster at pid " + fmt(pid) + ": " + fmt(t_repel) +
                               " vs " + fmt(t_attract)};
        }
        if (!(e_repel < e_attract)) {
            return {false, "repel not more accurate at pid " + fmt(pid) + ": " + fmt(e_repel) +
                               " vs " + fmt(e_attract)};
        }
        if (!detail.empty()) detail += "; ";
        detail += "pid " + fmt(pid) + ": steps " + fmt(t_repel) + "<" + fmt(t_attract) +
                  ", error " + fmt(e_repel) + "<" + fmt(e_attract);
    }
    return {true, detail};
}

// ---------------------------------------------------------------------------
// Check 6: attractant overshoot — lower reset probability (more momentum)
// costs path accuracy.
// ---------------------------------------------------------------------------

CheckResult check_overshoot(const Options&, const RunCache& cache) {
    const double low = mean(path_errors(cache, StimulusMode::attract, kLowReset, true));
    const double high = mean(path_errors(cache, StimulusMode::attract, kHighReset, true));
    const std::string detail =
        "mean path error " + fmt(low) + " (pid " + fmt(kLowReset) + ") vs " + fmt(high) +
        " (pid " + fmt(kHighReset) + ")";
    return {low > high, detail};
}

// ---------------------------------------------------------------------------
// Check 7: terminal orbiting — momentum blobs keep milling around a reached
// goal; twitchy blobs park on it.
// ---------------------------------------------------------------------------

CheckResult check_terminal_orbiting(const Options&, const RunCache& cache) {
    std::vector<double> low, high;
    for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
        const RunSummary& a = cache.get(orbit_key(kLowReset, s)).summary;
        const RunSummary& b = cache.get(orbit_key(kHighReset, s)).summary;
        if (!a.completed || !b.completed || !a.orbit_radius || !b.orbit_radius) {
            return {false, "orbit run without a grace window (seed " + std::to_string(s) + ")"};
        }
        low.push_back(*a.orbit_radius);
        high.push_back(*b.orbit_radius);
    }
    const double m_low = mean(low);
    const double m_high = mean(high);
    const std::string detail = "goal-orbit radius " + fmt(m_low) + " (pid " + fmt(kLowReset) +
                               ") vs " + fmt(m_high) + " (pid " + fmt(kHighReset) + ")";
    return {m_low > m_high, detail};
}

// ---------------------------------------------------------------------------
// Check 8: oscillatory flux is necessary for attractant towing and for
// competitive repellent times; the mask still works without it, slowly.
// ---------------------------------------------------------------------------

CheckResult check_oscillation_necessity(const Options&, const RunCache& cache) {
    std::vector<double> repel_noosc;
    for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
        const RunSummary& r = cache.get(course_key(StimulusMode::repel, kHighReset, s, false)).summary;
        if (!r.completed) {
            return {false, "non-oscillatory repel run did not complete (seed " +
                               std::to_string(s) + ")"};
        }
        repel_noosc.push_back(static_cast<double>(*r.traversal_steps));
    }
    const double t_noosc = mean(repel_noosc);
    const double t_osc = mean(traversal_steps(cache, StimulusMode::repel, kHighReset, true));
    if (!(t_noosc >= 5.0 * t_osc)) {
        return {false, "non-oscillatory repel only " + fmt(t_noosc / t_osc) +
                           "x slower (needs >= 5x): " + fmt(t_noosc) + " vs " + fmt(t_osc)};
    }
    int attract_failed = 0;
    for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
        if (!cache.get(course_key(StimulusMode::attract, kHighReset, s, false)).summary.completed) {
            ++attract_failed;
        }
    }
    const std::string detail = "repel " + fmt(t_noosc / t_osc) + "x slower without oscillation (" +
                               fmt(t_noosc) + " vs " + fmt(t_osc) + "); attract failed " +
                               std::to_string(attract_failed) + "/5 without oscillation";
    return {attract_failed >= 4, detail};
}

// ---------------------------------------------------------------------------
// Check 9: grating discrimination — the mask threads a grating the beacon
// cannot, and the beacon strands the blob on a grating bar.
// ---------------------------------------------------------------------------

// Vertical extent of the grating band in channel-grating.arena (fixture
// knowledge: the final row of slit obstacles before the goal pocket).
constexpr int kGratingBandTop = 315;
constexpr int kGratingBandBottom = 325;

CheckResult check_grating(const Options& opt, const RunCache& cache) {
    const ArenaFile fixture = load_arena_file(arena_path(opt, "channel-grating.arena"));
    std::vector<CellCoord> grating_cells;
    for (int y = kGratingBandTop; y <= kGratingBandBottom; ++y) {
        for (int x = 0; x < fixture.arena.width(); ++x) {
            if (fixture.arena.is_obstacle(x, y)) grating_cells.push_back({x, y});
        }
    }

    const int repel_done =
        completed_count(cache, [](std::uint64_t s) { return grating_key(StimulusMode::repel, s); });
    if (repel_done < 4) {
        return {false, "repel completed only " + std::to_string(repel_done) + "/5 gratings"};
    }

    int attract_stuck = 0;
    double worst_gap = 0.0;
    for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
        const RunResult& run = cache.get(grating_key(StimulusMode::attract, s));
        if (run.summary.completed) continue;
        double nearest = 1e18;
        for (const CellCoord& cell : grating_cells) {
            nearest = std::min(nearest, distance(run.final_centroid,
                                                 Vec2{static_cast<double>(cell.x),
                                                      static_cast<double>(cell.y)}));
        }
        if (nearest <= 30.0) {
            ++attract_stuck;
            worst_gap = std::max(worst_gap, nearest);
        }
    }
    const std::string detail = "repel completed " + std::to_string(repel_done) +
                               "/5; attract stranded at the grating " +
                               std::to_string(attract_stuck) + "/5 (max offset " + fmt(worst_gap) +
                               ")";
    return {attract_stuck >= 4, detail};
}

// ---------------------------------------------------------------------------
// Check 10: traversal-time envelope for every oscillatory course run the
// suite performs.
// ---------------------------------------------------------------------------

CheckResult check_traversal_envelope(const Options&, const RunCache& cache) {
    long lo = -1, hi = -1;
    for (StimulusMode mode : {StimulusMode::attract, StimulusMode::repel}) {
        for (double pid : {kLowReset, kHighReset}) {
            for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                const RunSummary& r = cache.get(course_key(mode, pid, s, true)).summary;
                if (!r.completed) {
                    return {false, std::string(to_string(mode)) + " pid " + fmt(pid) + " seed " +
                                       std::to_string(s) + " did not complete"};
                }
                const long t = *r.traversal_steps;
                if (t < 500 || t > 30000) {
                    return {false, "traversal " + std::to_string(t) + " outside [500, 30000] (" +
                                       to_string(mode) + ", pid " + fmt(pid) + ", seed " +
                                       std::to_string(s) + ")"};
                }
                lo = lo < 0 ? t : std::min(lo, t);
                hi = std::max(hi, t);
            }
        }
    }
    return {true, "all 20 oscillatory course traversals within [500, 30000] (observed " +
                      std::to_string(lo) + ".." + std::to_string(hi) + ")"};
}

// ---------------------------------------------------------------------------
// Harness.
// ---------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* name;
    // which cached runs the check needs
    std::function<void(const Options&, RunCache&)> declare;
    std::function<CheckResult(const Options&, const RunCache&)> evaluate;
};

void declare_course_sweep(const Options& opt, RunCache& cache) {
    for (StimulusMode mode : {StimulusMode::attract, StimulusMode::repel}) {
        for (double pid : {kLowReset, kHighReset}) {
            for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                cache.need(course_key(mode, pid, s, true), course_config(opt, mode, pid, s, true));
            }
        }
    }
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {1, "unit exactness", {},
         [](const Options& opt, const RunCache&) { return check_unit_exactness(opt); }},
        {2, "determinism", {},
         [](const Options& opt, const RunCache&) { return check_determinism(opt); }},
        {3, "blob formation", {},
         [](const Options& opt, const RunCache&) { return check_blob_formation(opt); }},
        {4, "sawtooth approach",
         [](const Options& opt, RunCache& cache) {
             for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                 cache.need(sawtooth_key(s), corridor_config(opt, kHighReset, s));
             }
         },
         check_sawtooth},
        {5, "repellent faster and more accurate", declare_course_sweep, check_repel_faster},
        {6, "attractant overshoot",
         [](const Options& opt, RunCache& cache) {
             for (double pid : {kLowReset, kHighReset}) {
                 for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                     cache.need(course_key(StimulusMode::attract, pid, s, true),
                                course_config(opt, StimulusMode::attract, pid, s, true));
                 }
             }
         },
         check_overshoot},
        {7, "terminal orbiting",
         [](const Options& opt, RunCache& cache) {
             for (double pid : {kLowReset, kHighReset}) {
                 for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                     cache.need(orbit_key(pid, s), orbit_config(opt, pid, s));
                 }
             }
         },
         check_terminal_orbiting},
        {8, "oscillation necessity",
         [](const Options& opt, RunCache& cache) {
             for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                 cache.need(course_key(StimulusMode::repel, kHighReset, s, true),
                            course_config(opt, StimulusMode::repel, kHighReset, s, true));
                 cache.need(course_key(StimulusMode::repel, kHighReset, s, false),
                            course_config(opt, StimulusMode::repel, kHighReset, s, false));
                 cache.need(course_key(StimulusMode::attract, kHighReset, s, false),
                            course_config(opt, StimulusMode::attract, kHighReset, s, false));
             }
         },
         check_oscillation_necessity},
        {9, "grating discrimination",
         [](const Options& opt, RunCache& cache) {
             for (StimulusMode mode : {StimulusMode::attract, StimulusMode::repel}) {
                 for (std::uint64_t s = 1; s <= kSeedsPerCell; ++s) {
                     cache.need(grating_key(mode, s), grating_config(opt, mode, s));
                 }
             }
         },
         check_grating},
        {10, "traversal-time envelope", declare_course_sweep, check_traversal_envelope},
    };
    return table;
}

bool parse_args(int argc, char** argv, Options& opt) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() -> const char* { return i + 1 < argc ? argv[++i] : nullptr; };
        if (arg == "--criterion") {
            const char* value = next();
            if (!value) return false;
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const int id = std::atoi(tok.c_str());
                if (id < 1 || id > 10) return false;
                opt.criteria.insert(id);
            }
        } else if (arg == "--jobs") {
            const char* value = next();
            if (!value) return false;
            opt.jobs = std::atoi(value);
        } else if (arg == "--arena-dir") {
            const char* value = next();
            if (!value) return false;
            opt.arena_dir = value;
        } else if (arg == "--work-dir") {
            const char* value = next();
            if (!value) return false;
            opt.work_dir = value;
        } else {
            std::fprintf(stderr,
                         "usage: acceptance [--criterion N[,M..]] [--jobs N] [--arena-dir DIR] "
                         "[--work-dir DIR]\n");
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    if (!parse_args(argc, argv, opt)) return 64;
    if (opt.work_dir.empty()) {
        opt.work_dir = (fs::temp_directory_path() / "physarum-acceptance").string();
    }
    fs::create_directories(opt.work_dir);

    auto selected = [&](int id) { return opt.criteria.empty() || opt.criteria.count(id) > 0; };

    RunCache cache;
    for (const Criterion& c : criteria()) {
        if (selected(c.id) && c.declare) c.declare(opt, cache);
    }
    if (cache.size() > 0) {
        std::printf("running %zu scenario runs...\n", cache.size());
        std::fflush(stdout);
        cache.execute(opt.jobs);
    }

    int failures = 0;
    for (const Criterion& c : criteria()) {
        if (!selected(c.id)) continue;
        CheckResult result;
        try {
            result = c.evaluate(opt, cache);
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        if (!result.pass) ++failures;
        std::printf("[%s] %2d %s — %s\n", result.pass ? "PASS" : "FAIL", c.id, c.name,
                    result.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
