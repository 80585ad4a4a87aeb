#include "physarum/fields.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace physarum {

TrailField::TrailField(int width, int height)
    : width_(width),
      height_(height),
      values_(static_cast<std::size_t>(width) * height, 0.0),
      row_sums_(values_.size(), 0.0),
      back_(values_.size(), 0.0) {
    assert(width_ > 0 && height_ > 0);
}

void TrailField::deposit(CellCoord cell, double amount) {
    assert(cell.x >= 0 && cell.x < width_ && cell.y >= 0 && cell.y < height_);
    assert(amount >= 0.0);
    values_[index(cell.x, cell.y)] += amount;
}

double TrailField::sample(Vec2 p) const {
    const CellCoord c = containing_cell(p);
    if (c.x < 0 || c.x >= width_ || c.y < 0 || c.y >= height_) return 0.0;
    return values_[index(c.x, c.y)];
}

void TrailField::diffuse(const Arena& arena, double damping) {
    assert(arena.width() == width_ && arena.height() == height_);
    // The 3x3 box sum separates into a horizontal then a vertical 3-sum.
    // Obstacle cells always hold 0 in the snapshot (invariant), so they
    // contribute nothing without any masking in the hot loops; out-of-bounds
    // neighbours are simply absent. The fixed /9 keeps the boundary and
    // obstacle rims absorbing.
    const double scale = damping / 9.0;
    const std::size_t w = static_cast<std::size_t>(width_);
    for (int y = 0; y < height_; ++y) {
        const double* src = values_.data() + w * y;
        double* dst = row_sums_.data() + w * y;
        if (width_ == 1) {
            dst[0] = src[0];
            continue;
        }
        dst[0] = src[0] + src[1];
        for (int x = 1; x < width_ - 1; ++x) {
            dst[x] = src[x - 1] + src[x] + src[x + 1];
        }
        dst[width_ - 1] = src[width_ - 2] + src[width_ - 1];
    }
    for (int y = 0; y < height_; ++y) {
        const double* mid = row_sums_.data() + w * y;
        const double* up = y > 0 ? row_sums_.data() + w * (y - 1) : nullptr;
        const double* down = y + 1 < height_ ? row_sums_.data() + w * (y + 1) : nullptr;
        double* dst = back_.data() + w * y;
        if (up && down) {
            for (int x = 0; x < width_; ++x) dst[x] = scale * (up[x] + mid[x] + down[x]);
        } else if (down) {
            for (int x = 0; x < width_; ++x) dst[x] = scale * (mid[x] + down[x]);
        } else if (up) {
            for (int x = 0; x < width_; ++x) dst[x] = scale * (up[x] + mid[x]);
        } else {
            for (int x = 0; x < width_; ++x) dst[x] = scale * mid[x];
        }
    }
    for (const std::int32_t i : arena.obstacle_cells()) {
        back_[static_cast<std::size_t>(i)] = 0.0;
    }
    values_.swap(back_);
}

void TrailField::clear() {
    std::fill(values_.begin(), values_.end(), 0.0);
}

double TrailField::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double TrailField::total_mass() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

void IlluminationField::set_mask(CellCoord center, int side) {
    assert(side >= 3 && side % 2 == 1);
    const int half = side / 2;
    active_ = true;
    x0_ = std::max(0, center.x - half);
    y0_ = std::max(0, center.y - half);
    x1_ = std::min(width_ - 1, center.x + half);
    y1_ = std::min(height_ - 1, center.y + half);
}

}  // namespace physarum
