#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cenra {

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

// Actions are fixed for the whole suite: 0=up 1=right 2=down 3=left.
// y grows downward, matching the row order of the layout file.
constexpr int kNumActions = 4;
Cell apply_action(Cell c, int action);

// A key-door maze. The agent must reach the key before the door cell becomes
// passable; the goal may sit on either side of the door.
struct MazeLayout {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> walls;  // row-major, 1 = wall
    Cell start, key, door, goal;
    std::string name;  // where it came from, for error messages

    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    bool is_wall(Cell c) const { return walls[static_cast<size_t>(c.y) * width + c.x] != 0; }

    // Passability for an agent in the given key state: walls never, the door
    // only once the key is held.
    bool passable(Cell c, bool has_key) const {
        if (!in_bounds(c) || is_wall(c)) return false;
        if (c == door && !has_key) return false;
        return true;
    }

    std::vector<Cell> open_cells() const;

    static MazeLayout parse(std::istream& in, const std::string& name);
    static MazeLayout load(const std::filesystem::path& file);
    void validate() const;  // throws ConfigError on any structural problem
};

// Distance from every cell to `target`, moving through cells passable under
// `has_key`. The target itself only needs to be non-wall (so the locked door
// can be a target). Unreachable cells get -1.
std::vector<int> bfs_distances(const MazeLayout& m, Cell target, bool has_key);

// Cells the agent can occupy in the given key state. Without the key the
// agent starts at `start`; with it, anywhere reachable from the key cell with
// the door open.
std::vector<Cell> reachable_cells(const MazeLayout& m, bool has_key);

// The set of first moves (sorted action ids) that start a shortest path from
// `from` to the current subgoal: the key if it is not held, else the goal.
// Throws OracleError if `from` is not passable or the subgoal is unreachable.
std::vector<int> oracle_actions(const MazeLayout& m, Cell from, bool has_key);

}  // namespace cenra
