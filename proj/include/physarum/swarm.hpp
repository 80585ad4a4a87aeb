#pragma once

#include <cstdint>
#include <vector>

#include "physarum/arena.hpp"
#include "physarum/fields.hpp"
#include "physarum/geometry.hpp"
#include "physarum/rng.hpp"

namespace physarum {

// Behavioural parameters shared by every particle in a population.
struct SwarmParams {
    double sensor_angle_deg = 90.0;    // offset of the side sensors from forward
    double sensor_offset = 15.0;       // sensor distance ahead of the particle, cells
    double rotation_angle_deg = 45.0;  // heading increment applied by a turn
    double deposit_amount = 5.0;       // trail laid per successful cell change
    bool oscillatory = true;           // keep heading while blocked (momentum)
    double reset_probability = 0.05;   // per-step chance to drop momentum state
    double light_attenuation = 0.1;    // sensor gain on illuminated cells
    double trail_damping = 0.1;        // multiplier on the 3x3 mean per diffusion pass

    // invariants: angles in (0, 180], sensor_offset >= 1,
    // deposit_amount >= 0, reset_probability and light_attenuation in [0, 1],
    // trail_damping in (0, 1)
};

// Move length per step, in cells. Fixed by the model.
inline constexpr double kStepLength = 1.0;

// Fraction of disc cells a fresh inoculation is allowed to occupy; sets the
// disc radius for a given particle count.
inline constexpr double kInoculationFill = 0.5;

// One autonomous agent. internal_pos is the momentum reference position: it
// tracks where the particle would be had it not been blocked, and is snapped
// back to pos on every successful move or momentum reset. The gap between
// internal_pos and pos is the displacement a blocked particle is owed; it
// sets how far ahead the particle may stream to reach an opening (see
// attempt_move). In non-oscillatory mode it always equals pos.
struct Particle {
    Vec2 pos;
    double heading_deg = 0.0;  // in [0, 360)
    Vec2 internal_pos;
};

// Particle collection plus the single-occupancy index of the lattice.
// Between steps: every particle sits on a distinct traversable cell and
// occupancy(cell) names exactly the particles sitting there (a bijection).
class Population {
  public:
    // Drops `count` particles on distinct random traversable cells inside a
    // disc around `center` (radius = inoculation_radius(count)), positioned
    // at cell centers with i.i.d. uniform headings. Consumes `count` bounded
    // draws (partial Fisher-Yates over the row-major candidate list), then
    // `count` heading draws. Throws std::runtime_error when the disc holds
    // fewer than `count` free cells.
    static Population inoculate(const Arena& arena, CellCoord center, int count, Rng& rng);

    // Builds a population at explicit positions (distinct traversable cells
    // required); mainly for tests and analysis tooling.
    static Population from_positions(const Arena& arena, const std::vector<Vec2>& positions,
                                     double heading_deg = 0.0);

    std::size_t size() const { return particles_.size(); }
    const Particle& particle(std::size_t i) const { return particles_[i]; }
    Particle& particle(std::size_t i) { return particles_[i]; }
    const std::vector<Particle>& particles() const { return particles_; }

    // Particle index occupying a cell, or -1. pre: cell in bounds.
    std::int32_t occupant(int x, int y) const {
        return occupancy_[static_cast<std::size_t>(y) * width_ + x];
    }

    bool is_vacant(int x, int y) const { return occupant(x, y) < 0; }

    // Relocates a particle's occupancy entry. pre: `to` vacant or equal to `from`.
    void relocate(std::int32_t id, CellCoord from, CellCoord to);

    // Full occupancy/particle consistency check (bijection, traversability,
    // bounds, non-oscillatory internal_pos pinning). Used by tests and the
    // long-run integrity gate.
    bool check_invariants(const Arena& arena, bool oscillatory) const;

    int width() const { return width_; }
    int height() const { return height_; }

  private:
    Population(int width, int height)
        : width_(width), height_(height),
          occupancy_(static_cast<std::size_t>(width) * height, -1) {}

    int width_;
    int height_;
    std::vector<Particle> particles_;
    std::vector<std::int32_t> occupancy_;
};

// Disc radius used by inoculate(): the smallest integer r whose disc, at
// kInoculationFill occupancy, holds `count` particles (pi r^2 fill >= count).
int inoculation_radius(int count);

// Trail readings of the three forward sensors.
struct SensorReadings {
    double left = 0.0;
    double front = 0.0;
    double right = 0.0;
};

// Samples the trail at the three sensor points (front at sensor_offset along
// the heading, left/right rotated by -/+ sensor_angle). Out-of-bounds points
// read 0; readings from illuminated cells are scaled by light_attenuation.
SensorReadings sense(const Particle& p, const TrailField& trail,
                     const IlluminationField& light, const SwarmParams& params);

// Applies the sensory turn rule to the heading. Consumes one coin draw only
// when the front reading is strictly the weakest. The heading change is one
// of {0, +rotation, -rotation} (mod 360).
void turn(Particle& p, const SensorReadings& readings, const SwarmParams& params, Rng& rng);

// Attempts the motor step of one particle: advance kStepLength along the
// heading. Succeeds when the move stays within the current cell, or when the
// destination cell is traversable and vacant; deposits trail only on an
// actual cell change, and only at the landing cell.
//
// Oscillatory momentum: each blocked step leaves the particle owed one more
// step of displacement (internal_pos runs ahead of pos). On later attempts
// the particle examines the cells along its heading out to that owed
// distance and streams to the nearest vacant one, passing occupied cells --
// mass transport through the interior of a packed collective, the source of
// its travelling waves. Obstacles and the lattice edge stop the scan: there
// is no passing through walls. A particle that is not in arrears only
// examines the adjacent cell.
//
// When every cell within reach is occupied (or the scan hits a wall),
// oscillatory particles keep their heading and let internal_pos advance;
// non-oscillatory particles draw a fresh uniform heading (their reach is
// always 1). Returns whether the particle moved.
bool attempt_move(Population& pop, std::int32_t id, const Arena& arena, TrailField& trail,
                  const SwarmParams& params, Rng& rng);

// Oscillatory-mode momentum reset: with probability reset_probability the
// particle snaps internal_pos to pos and draws a fresh uniform heading.
// Consumes one draw always, a second when the reset fires. Must be called
// exactly once per particle per step, after its motor stage.
void maybe_reset_reference(Particle& p, const SwarmParams& params, Rng& rng);

// One scheduler step over the whole population: a fresh random particle
// order (one shuffle), then per particle sense -> turn -> attempt_move ->
// maybe_reset_reference (oscillatory only), then exactly one diffusion pass.
void step_population(Population& pop, const Arena& arena, TrailField& trail,
                     const IlluminationField& light, const SwarmParams& params, Rng& rng);

}  // namespace physarum
