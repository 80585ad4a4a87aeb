#pragma once

#include <vector>

#include "physarum/arena.hpp"
#include "physarum/geometry.hpp"

namespace physarum {

// Scalar deposit field over the arena lattice. Values are non-negative;
// obstacle cells hold exactly 0 after every diffuse(). Double-buffered so a
// diffusion pass is a pure function of the previous snapshot.
class TrailField {
  public:
    static constexpr double kDefaultDamping = 0.1;

    TrailField(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    // pre: in bounds.
    double value(int x, int y) const { return values_[index(x, y)]; }

    // Adds amount at a cell. pre: cell in bounds and traversable in the
    // arena this field is stepped against; amount >= 0.
    void deposit(CellCoord cell, double amount);

    // Value of the cell containing p; 0 for out-of-bounds positions.
    double sample(Vec2 p) const;

    // One smoothing-and-decay pass over the whole lattice:
    //   new(c) = damping * (sum of the 3x3 neighbourhood of c) / 9
    // Out-of-bounds and obstacle neighbours contribute 0 and the denominator
    // stays 9, so the boundary is absorbing. Obstacle cells are forced to 0.
    // The pass reads only the pre-call snapshot; evaluation order cannot
    // affect the result.
    void diffuse(const Arena& arena, double damping = kDefaultDamping);

    void clear();

    double max_value() const;
    double total_mass() const;

    // Row-major snapshot of current values (rendering, tests).
    const std::vector<double>& values() const { return values_; }

  private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<double> values_;
    std::vector<double> row_sums_;  // horizontal 3-sums, scratch
    std::vector<double> back_;      // write buffer, swapped in after a pass
};

// Global illumination state used by the repellent stimulus: when active,
// every cell outside one axis-aligned rectangle (the unlit "shadow" square)
// is illuminated. When inactive no cell is illuminated.
class IlluminationField {
  public:
    IlluminationField(int width, int height)
        : width_(width), height_(height) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool active() const { return active_; }

    // Activates the mask: an axis-aligned square of the given odd side
    // length (>= 3) centered on the given cell, clamped to the lattice
    // bounds, becomes the unlit region; everything else is illuminated.
    void set_mask(CellCoord center, int side);

    // Deactivates illumination entirely; idempotent.
    void clear_mask() { active_ = false; }

    // Total over the lattice; false whenever inactive.
    bool is_illuminated(int x, int y) const {
        if (!active_) return false;
        return x < x0_ || x > x1_ || y < y0_ || y > y1_;
    }
    bool is_illuminated(CellCoord c) const { return is_illuminated(c.x, c.y); }

  private:
    int width_;
    int height_;
    bool active_ = false;
    int x0_ = 0, y0_ = 0, x1_ = -1, y1_ = -1;  // inclusive unlit rectangle
};

}  // namespace physarum
