#include "physarum/arena.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace physarum {

namespace {

// Splits on runs of spaces/tabs; no empty tokens.
std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

int parse_int(std::string_view token, int line_no, const std::string& what) {
    int value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ArenaParseError(line_no, "expected integer " + what + ", got '" +
                                           std::string(token) + "'");
    }
    return value;
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

Arena::Arena(int width, int height)
    : Arena(width, height,
            std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)) {}

Arena::Arena(int width, int height, std::vector<std::uint8_t> obstacles)
    : width_(width), height_(height), obstacles_(std::move(obstacles)) {
    assert(width_ >= kMinSize && height_ >= kMinSize);
    assert(obstacles_.size() == static_cast<std::size_t>(width_) * height_);
    for (std::size_t i = 0; i < obstacles_.size(); ++i) {
        if (obstacles_[i] != 0) obstacle_cells_.push_back(static_cast<std::int32_t>(i));
    }
}

ArenaFile parse_arena(std::string_view text) {
    // split into lines; tolerate a trailing '\r' per line so files edited on
    // other platforms still load (canonical form uses LF only)
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }

    std::size_t cursor = 0;
    auto need_line = [&](const std::string& what) -> std::string_view {
        if (cursor >= lines.size()) {
            throw ArenaParseError(static_cast<int>(lines.size()),
                                  "unexpected end of input, expected " + what);
        }
        return lines[cursor++];
    };
    auto line_no = [&]() { return static_cast<int>(cursor); };  // 1-based, last read

    if (need_line("header '#physarum-arena v1'") != "#physarum-arena v1") {
        throw ArenaParseError(1, "malformed header, expected '#physarum-arena v1'");
    }

    auto parse_dimension = [&](const std::string& key) {
        auto tokens = split_tokens(need_line("'" + key + " <int>'"));
        if (tokens.size() != 2 || tokens[0] != key) {
            throw ArenaParseError(line_no(), "expected '" + key + " <int>'");
        }
        int v = parse_int(tokens[1], line_no(), key);
        if (v < Arena::kMinSize) {
            throw ArenaParseError(line_no(), key + " must be at least " +
                                                 std::to_string(Arena::kMinSize) +
                                                 ", got " + std::to_string(v));
        }
        return v;
    };
    const int width = parse_dimension("width");
    const int height = parse_dimension("height");

    // waypoint lines (>= 2), then the 'grid' sentinel
    std::vector<CellCoord> waypoints;
    std::vector<int> waypoint_lines;
    for (;;) {
        auto line = need_line("'waypoint <x> <y>' or 'grid'");
        auto tokens = split_tokens(line);
        if (tokens.size() == 1 && tokens[0] == "grid") break;
        if (tokens.empty() || tokens[0] != "waypoint") {
            throw ArenaParseError(line_no(), "expected 'waypoint <x> <y>' or 'grid', got '" +
                                                 std::string(line) + "'");
        }
        if (tokens.size() != 3) {
            throw ArenaParseError(line_no(), "expected 'waypoint <x> <y>'");
        }
        CellCoord wp{parse_int(tokens[1], line_no(), "waypoint x"),
                     parse_int(tokens[2], line_no(), "waypoint y")};
        if (wp.x < 0 || wp.x >= width || wp.y < 0 || wp.y >= height) {
            throw ArenaParseError(line_no(), "waypoint (" + std::to_string(wp.x) + ", " +
                                                 std::to_string(wp.y) + ") is out of bounds");
        }
        if (!waypoints.empty() && waypoints.back() == wp) {
            throw ArenaParseError(line_no(), "consecutive duplicate waypoint (" +
                                                 std::to_string(wp.x) + ", " +
                                                 std::to_string(wp.y) + ")");
        }
        waypoints.push_back(wp);
        waypoint_lines.push_back(line_no());
    }
    const int grid_line = line_no();
    if (waypoints.size() < 2) {
        throw ArenaParseError(grid_line, "path needs at least 2 waypoints, got " +
                                             std::to_string(waypoints.size()));
    }

    std::vector<std::uint8_t> obstacles(static_cast<std::size_t>(width) * height, 0);
    for (int y = 0; y < height; ++y) {
        auto row = need_line("grid row " + std::to_string(y));
        if (static_cast<int>(row.size()) != width) {
            throw ArenaParseError(line_no(), "grid row " + std::to_string(y) + ": expected " +
                                                 std::to_string(width) + " characters, got " +
                                                 std::to_string(row.size()));
        }
        for (int x = 0; x < width; ++x) {
            const char c = row[static_cast<std::size_t>(x)];
            if (c == '#') {
                obstacles[static_cast<std::size_t>(y) * width + x] = 1;
            } else if (c != '.') {
                throw ArenaParseError(line_no(), "grid row " + std::to_string(y) +
                                                     ": invalid character '" +
                                                     std::string(1, c) + "'");
            }
        }
    }
    while (cursor < lines.size()) {
        if (!is_blank(lines[cursor])) {
            throw ArenaParseError(static_cast<int>(cursor + 1),
                                  "unexpected content after grid rows");
        }
        ++cursor;
    }

    Arena arena(width, height, std::move(obstacles));
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        if (arena.is_obstacle(waypoints[i].x, waypoints[i].y)) {
            throw ArenaParseError(waypoint_lines[i],
                                  "waypoint (" + std::to_string(waypoints[i].x) + ", " +
                                      std::to_string(waypoints[i].y) + ") lies on an obstacle");
        }
    }
    return ArenaFile{std::move(arena), PathSpec{std::move(waypoints)}};
}

ArenaFile load_arena_file(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open arena file: " + filename);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_arena(buffer.str());
    } catch (const ArenaParseError& e) {
        throw ArenaParseError(e.line(), filename + ": " + e.what());
    }
}

std::string serialize_arena(const Arena& arena, const PathSpec& path) {
    std::string out;
    const int w = arena.width();
    const int h = arena.height();
    out.reserve(static_cast<std::size_t>(w + 1) * h + 64 + 16 * path.waypoints.size());
    out += "#physarum-arena v1\n";
    out += "width " + std::to_string(w) + "\n";
    out += "height " + std::to_string(h) + "\n";
    for (const auto& wp : path.waypoints) {
        out += "waypoint " + std::to_string(wp.x) + " " + std::to_string(wp.y) + "\n";
    }
    out += "grid\n";
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out += arena.is_obstacle(x, y) ? '#' : '.';
        }
        out += '\n';
    }
    return out;
}

double distance_to_path(const PathSpec& path, Vec2 p) {
    assert(!path.waypoints.empty());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
        const Vec2 a{static_cast<double>(path.waypoints[i].x),
                     static_cast<double>(path.waypoints[i].y)};
        const Vec2 b{static_cast<double>(path.waypoints[i + 1].x),
                     static_cast<double>(path.waypoints[i + 1].y)};
        const Vec2 ab = b - a;
        const double len2 = dot(ab, ab);
        double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, distance(p, a + t * ab));
    }
    if (path.waypoints.size() == 1) {
        const Vec2 a{static_cast<double>(path.waypoints[0].x),
                     static_cast<double>(path.waypoints[0].y)};
        best = distance(p, a);
    }
    return best;
}

}  // namespace physarum
