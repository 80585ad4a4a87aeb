#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "physarum/geometry.hpp"

namespace physarum {

// Bounded rectangular lattice with a static obstacle mask. Immutable after
// construction, so a single instance may be shared by concurrent runs.
class Arena {
  public:
    static constexpr int kMinSize = 16;

    // All-free arena. pre: width, height >= kMinSize.
    Arena(int width, int height);

    // Arena with an explicit obstacle mask (row-major, width*height entries,
    // nonzero = obstacle). pre: dimensions >= kMinSize, mask size matches.
    Arena(int width, int height, std::vector<std::uint8_t> obstacles);

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    // pre: in bounds.
    bool is_obstacle(int x, int y) const { return obstacles_[index(x, y)] != 0; }

    // Total: false for out-of-bounds as well as obstacle cells.
    bool is_traversable(int x, int y) const {
        return in_bounds(x, y) && !is_obstacle(x, y);
    }
    bool is_traversable(CellCoord c) const { return is_traversable(c.x, c.y); }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    const std::vector<std::uint8_t>& obstacle_mask() const { return obstacles_; }

    // Row-major indices of all obstacle cells (precomputed; diffusion zeroes
    // these after every pass).
    const std::vector<std::int32_t>& obstacle_cells() const { return obstacle_cells_; }

  private:
    int width_;
    int height_;
    std::vector<std::uint8_t> obstacles_;
    std::vector<std::int32_t> obstacle_cells_;
};

// Ordered waypoint list for guidance, expressed in cell coordinates.
// Valid paths have at least two waypoints (start and goal), every waypoint
// on a traversable cell, and no two consecutive waypoints equal.
struct PathSpec {
    std::vector<CellCoord> waypoints;
};

// Raised by parse_arena / load_arena_file with a 1-based line number of the
// offending input line (0 when the problem is not tied to a single line).
class ArenaParseError : public std::runtime_error {
  public:
    ArenaParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

struct ArenaFile {
    Arena arena;
    PathSpec path;
};

// Parses the textual arena format:
//
//   #physarum-arena v1
//   width <int>
//   height <int>
//   waypoint <x> <y>        (two or more, in path order)
//   grid
//   <height rows of exactly width characters: '.' free, '#' obstacle>
//
// Row 0 of the grid is y = 0 (top). Throws ArenaParseError on malformed
// input, out-of-range dimensions, waypoints out of bounds / on obstacles /
// consecutively duplicated, or grid size mismatches.
ArenaFile parse_arena(std::string_view text);

// Reads and parses an arena file from disk. Throws std::runtime_error when
// the file cannot be read, ArenaParseError when it cannot be parsed.
ArenaFile load_arena_file(const std::string& filename);

// Inverse of parse_arena: emits the canonical text form (LF line endings).
// parse_arena(serialize_arena(a, p)) reproduces a and p exactly.
std::string serialize_arena(const Arena& arena, const PathSpec& path);

// Minimum Euclidean distance from p to the path polyline (segments between
// consecutive waypoints, endpoints included). pre: at least one waypoint.
double distance_to_path(const PathSpec& path, Vec2 p);

}  // namespace physarum
