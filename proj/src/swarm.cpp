#include "physarum/swarm.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace physarum {

int inoculation_radius(int count) {
    assert(count >= 1);
    int r = 1;
    while (kPi * r * r * kInoculationFill < count) ++r;
    return r;
}

Population Population::inoculate(const Arena& arena, CellCoord center, int count, Rng& rng) {
    assert(count >= 1);
    const int r = inoculation_radius(count);
    const std::int64_t r2 = static_cast<std::int64_t>(r) * r;

    // candidate cells in row-major order: traversable and within r of center
    std::vector<CellCoord> candidates;
    for (int y = center.y - r; y <= center.y + r; ++y) {
        for (int x = center.x - r; x <= center.x + r; ++x) {
            const std::int64_t dx = x - center.x;
            const std::int64_t dy = y - center.y;
            if (dx * dx + dy * dy > r2) continue;
            if (!arena.is_traversable(x, y)) continue;
            candidates.push_back({x, y});
        }
    }
    if (static_cast<int>(candidates.size()) < count) {
        throw std::runtime_error(
            "inoculation disc of radius " + std::to_string(r) + " at (" +
            std::to_string(center.x) + ", " + std::to_string(center.y) + ") has only " +
            std::to_string(candidates.size()) + " free cells, need " + std::to_string(count));
    }

    // partial Fisher-Yates: the first `count` entries become a uniform
    // sample without replacement; consumes exactly `count` bounded draws
    for (int i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(candidates.size() - i));
        std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
    }

    Population pop(arena.width(), arena.height());
    pop.particles_.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const CellCoord cell = candidates[static_cast<std::size_t>(i)];
        Particle p;
        p.pos = cell_center(cell);
        p.heading_deg = rng.heading_deg();
        p.internal_pos = p.pos;
        pop.particles_.push_back(p);
        pop.occupancy_[arena.index(cell.x, cell.y)] = i;
    }
    return pop;
}

Population Population::from_positions(const Arena& arena, const std::vector<Vec2>& positions,
                                      double heading_deg) {
    Population pop(arena.width(), arena.height());
    pop.particles_.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const CellCoord cell = containing_cell(positions[i]);
        if (!arena.is_traversable(cell)) {
            throw std::runtime_error("particle position outside traversable space");
        }
        if (!pop.is_vacant(cell.x, cell.y)) {
            throw std::runtime_error("two particles share a cell");
        }
        Particle p;
        p.pos = positions[i];
        p.heading_deg = normalize_deg(heading_deg);
        p.internal_pos = p.pos;
        pop.particles_.push_back(p);
        pop.occupancy_[arena.index(cell.x, cell.y)] = static_cast<std::int32_t>(i);
    }
    return pop;
}

void Population::relocate(std::int32_t id, CellCoord from, CellCoord to) {
    if (from == to) return;
    assert(occupancy_[static_cast<std::size_t>(from.y) * width_ + from.x] == id);
    assert(occupancy_[static_cast<std::size_t>(to.y) * width_ + to.x] < 0);
    occupancy_[static_cast<std::size_t>(from.y) * width_ + from.x] = -1;
    occupancy_[static_cast<std::size_t>(to.y) * width_ + to.x] = id;
}

bool Population::check_invariants(const Arena& arena, bool oscillatory) const {
    if (arena.width() != width_ || arena.height() != height_) return false;
    std::size_t occupied = 0;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const std::int32_t id = occupant(x, y);
            if (id < 0) continue;
            ++occupied;
            if (static_cast<std::size_t>(id) >= particles_.size()) return false;
            const Particle& p = particles_[static_cast<std::size_t>(id)];
            if (containing_cell(p.pos) != CellCoord{x, y}) return false;
            if (!arena.is_traversable(x, y)) return false;
        }
    }
    if (occupied != particles_.size()) return false;
    for (const Particle& p : particles_) {
        if (p.heading_deg < 0.0 || p.heading_deg >= 360.0) return false;
        if (!oscillatory &&
            (p.internal_pos.x != p.pos.x || p.internal_pos.y != p.pos.y)) return false;
    }
    return true;
}

SensorReadings sense(const Particle& p, const TrailField& trail,
                     const IlluminationField& light, const SwarmParams& params) {
    const double rad = deg_to_rad(p.heading_deg);
    const double ch = std::cos(rad);
    const double sh = std::sin(rad);
    const double ca = std::cos(deg_to_rad(params.sensor_angle_deg));
    const double sa = std::sin(deg_to_rad(params.sensor_angle_deg));
    // heading rotated by -/+ sensor_angle via the angle-addition identities
    const Vec2 front_dir{ch, sh};
    const Vec2 left_dir{ch * ca + sh * sa, sh * ca - ch * sa};
    const Vec2 right_dir{ch * ca - sh * sa, sh * ca + ch * sa};

    auto read = [&](Vec2 dir) {
        const Vec2 at = p.pos + params.sensor_offset * dir;
        const CellCoord cell = containing_cell(at);
        double v = trail.sample(at);  // 0 beyond the lattice
        if (light.is_illuminated(cell.x, cell.y)) v *= params.light_attenuation;
        return v;
    };
    return SensorReadings{read(left_dir), read(front_dir), read(right_dir)};
}

void turn(Particle& p, const SensorReadings& r, const SwarmParams& params, Rng& rng) {
    const double ra = params.rotation_angle_deg;
    if (r.front > r.left && r.front > r.right) {
        return;  // strongest ahead: hold course
    }
    if (r.front < r.left && r.front < r.right) {
        // weakest ahead: fair coin between the two side turns
        p.heading_deg = normalize_deg(p.heading_deg + (rng.next_double() < 0.5 ? ra : -ra));
        return;
    }
    if (r.left < r.right) {
        p.heading_deg = normalize_deg(p.heading_deg + ra);
    } else if (r.right < r.left) {
        p.heading_deg = normalize_deg(p.heading_deg - ra);
    }
    // remaining ties: hold course
}

bool attempt_move(Population& pop, std::int32_t id, const Arena& arena, TrailField& trail,
                  const SwarmParams& params, Rng& rng) {
    Particle& p = pop.particle(static_cast<std::size_t>(id));
    const CellCoord from = containing_cell(p.pos);
    const Vec2 unit = heading_vector(p.heading_deg);

    // Discharge reach. While a particle is blocked its reference position
    // runs ahead of its body; the accumulated displacement lets it stream
    // past occupied cells to the first opening on its ray, the way sol
    // percolates through the fixed gel matrix of the collective. A particle
    // with no arrears only examines the adjacent cell. Non-oscillatory
    // particles never accumulate arrears (reference pinned to the body).
    int reach = 1;
    if (params.oscillatory) {
        reach = 1 + static_cast<int>(distance(p.internal_pos, p.pos) + 1e-9);
    }

    for (int d = 1; d <= reach; ++d) {
        const Vec2 candidate = p.pos + d * kStepLength * unit;
        const CellCoord to = containing_cell(candidate);
        if (to == from) {
            // sub-cell advance (only possible at d == 1): no occupancy
            // change, no deposit
            p.pos = candidate;
            p.internal_pos = p.pos;
            return true;
        }
        if (!arena.is_traversable(to)) {
            break;  // walls and lattice edges stop the stream outright
        }
        if (pop.is_vacant(to.x, to.y)) {
            pop.relocate(id, from, to);
            trail.deposit(to, params.deposit_amount);
            p.pos = candidate;
            p.internal_pos = p.pos;
            return true;
        }
        // occupied: probe the next cell out along the heading
    }

    // blocked: the particle stays put
    if (params.oscillatory) {
        // momentum: hold the heading, let the reference position run ahead
        p.internal_pos = p.internal_pos + kStepLength * heading_vector(p.heading_deg);
    } else {
        p.heading_deg = rng.heading_deg();
    }
    return false;
}

void maybe_reset_reference(Particle& p, const SwarmParams& params, Rng& rng) {
    if (rng.next_double() < params.reset_probability) {
        p.internal_pos = p.pos;
        p.heading_deg = rng.heading_deg();
    }
}

void step_population(Population& pop, const Arena& arena, TrailField& trail,
                     const IlluminationField& light, const SwarmParams& params, Rng& rng) {
    // fresh execution order every step so no particle is systematically
    // favoured in the race for vacant cells
    std::vector<std::int32_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    for (const std::int32_t id : order) {
        Particle& p = pop.particle(static_cast<std::size_t>(id));
        const SensorReadings readings = sense(p, trail, light, params);
        turn(p, readings, params, rng);
        attempt_move(pop, id, arena, trail, params, rng);
        if (params.oscillatory) {
            maybe_reset_reference(p, params, rng);
        }
    }
    trail.diffuse(arena, params.trail_damping);
}

}  // namespace physarum
