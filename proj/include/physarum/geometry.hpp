#pragma once

#include <cmath>

namespace physarum {

// Continuous position in arena space. x grows rightward, y grows downward;
// the lattice cell (cx, cy) covers the half-open square [cx, cx+1) x [cy, cy+1).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Integer lattice cell coordinate.
struct CellCoord {
    int x = 0;
    int y = 0;

    friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Center of a lattice cell.
inline Vec2 cell_center(CellCoord c) { return {c.x + 0.5, c.y + 0.5}; }

// Cell containing a continuous position (floor in both axes; may be out of
// bounds for positions outside the arena).
inline CellCoord containing_cell(Vec2 p) {
    return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }

// Unit vector for a heading given in degrees. Heading 0 points along +x,
// 90 along +y (downward on screen), i.e. angles rotate clockwise in the
// usual image orientation.
inline Vec2 heading_vector(double heading_deg) {
    const double r = deg_to_rad(heading_deg);
    return {std::cos(r), std::sin(r)};
}

// Normalize an angle in degrees to [0, 360).
inline double normalize_deg(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d;
}

}  // namespace physarum
