#include "cenra/grid.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "cenra/errors.hpp"

namespace cenra {

Cell apply_action(Cell c, int action) {
    switch (action) {
        case 0: return {c.x, c.y - 1};  // up
        case 1: return {c.x + 1, c.y};  // right
        case 2: return {c.x, c.y + 1};  // down
        case 3: return {c.x - 1, c.y};  // left
        default: throw UsageError("apply_action: action out of range: " + std::to_string(action));
    }
}

std::vector<Cell> MazeLayout::open_cells() const {
    std::vector<Cell> out;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (!is_wall({x, y})) out.push_back({x, y});
    return out;
}

[[noreturn]] static void parse_fail(const std::string& name, const std::string& what) {
    throw ConfigError("maze '" + name + "': " + what);
}

MazeLayout MazeLayout::parse(std::istream& in, const std::string& name) {
    std::string magic, version;
    int w = 0, h = 0;
    if (!(in >> magic >> version >> w >> h) || magic != "maze" || version != "v1")
        parse_fail(name, "expected header 'maze v1 <width> <height>'");
    if (w < 3 || h < 3) parse_fail(name, "grid too small: " + std::to_string(w) + "x" + std::to_string(h));

    MazeLayout m;
    m.width = w;
    m.height = h;
    m.name = name;
    m.walls.assign(static_cast<size_t>(w) * h, 0);
    Cell none{-1, -1};
    m.start = m.key = m.door = m.goal = none;

    std::string line;
    std::getline(in, line);  // rest of the header line
    for (int y = 0; y < h; ++y) {
        if (!std::getline(in, line)) parse_fail(name, "missing row " + std::to_string(y));
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (static_cast<int>(line.size()) != w)
            parse_fail(name, "row " + std::to_string(y) + " has " + std::to_string(line.size()) +
                                 " cells, expected " + std::to_string(w));
        for (int x = 0; x < w; ++x) {
            Cell c{x, y};
            switch (line[x]) {
                case '#': m.walls[static_cast<size_t>(y) * w + x] = 1; break;
                case '.': break;
                case 'S':
                    if (m.start != none) parse_fail(name, "duplicate 'S'");
                    m.start = c;
                    break;
                case 'K':
                    if (m.key != none) parse_fail(name, "duplicate 'K'");
                    m.key = c;
                    break;
                case 'D':
                    if (m.door != none) parse_fail(name, "duplicate 'D'");
                    m.door = c;
                    break;
                case 'G':
                    if (m.goal != none) parse_fail(name, "duplicate 'G'");
                    m.goal = c;
                    break;
                default:
                    parse_fail(name, std::string("unknown cell character '") + line[x] + "' at row " +
                                         std::to_string(y));
            }
        }
    }
    for (auto [c, what] : {std::pair{m.start, "S"}, {m.key, "K"}, {m.door, "D"}, {m.goal, "G"}})
        if (c == none) parse_fail(name, std::string("missing marker '") + what + "'");
    m.validate();
    return m;
}

MazeLayout MazeLayout::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open maze file: " + file.string());
    MazeLayout m = parse(in, file.string());  // full path in parse diagnostics
    m.name = file.stem().string();            // short name in artifacts
    return m;
}

static int index_of(const MazeLayout& m, Cell c) { return c.y * m.width + c.x; }

std::vector<int> bfs_distances(const MazeLayout& m, Cell target, bool has_key) {
    if (!m.in_bounds(target) || m.is_wall(target))
        throw OracleError("bfs target is a wall or out of bounds");
    std::vector<int> dist(static_cast<size_t>(m.width) * m.height, -1);
    std::deque<Cell> frontier;
    dist[index_of(m, target)] = 0;
    frontier.push_back(target);
    while (!frontier.empty()) {
        Cell c = frontier.front();
        frontier.pop_front();
        int d = dist[index_of(m, c)];
        for (int a = 0; a < kNumActions; ++a) {
            Cell n = apply_action(c, a);
            // Expanding outward from the target: `n` must be a cell the agent
            // can stand on, so the lock rule applies to every cell but the
            // target itself.
            if (!m.passable(n, has_key)) continue;
            if (dist[index_of(m, n)] >= 0) continue;
            dist[index_of(m, n)] = d + 1;
            frontier.push_back(n);
        }
    }
    return dist;
}

std::vector<Cell> reachable_cells(const MazeLayout& m, bool has_key) {
    Cell origin = has_key ? m.key : m.start;
    std::vector<int> dist(static_cast<size_t>(m.width) * m.height, -1);
    std::deque<Cell> frontier;
    dist[index_of(m, origin)] = 0;
    frontier.push_back(origin);
    std::vector<Cell> out{origin};
    while (!frontier.empty()) {
        Cell c = frontier.front();
        frontier.pop_front();
        for (int a = 0; a < kNumActions; ++a) {
            Cell n = apply_action(c, a);
            if (!m.passable(n, has_key)) continue;
            if (dist[index_of(m, n)] >= 0) continue;
            dist[index_of(m, n)] = dist[index_of(m, c)] + 1;
            frontier.push_back(n);
            out.push_back(n);
        }
    }
    return out;
}

std::vector<int> oracle_actions(const MazeLayout& m, Cell from, bool has_key) {
    if (!m.passable(from, has_key))
        throw OracleError("oracle asked about a cell the agent cannot occupy");
    Cell subgoal = has_key ? m.goal : m.key;
    std::vector<int> dist = bfs_distances(m, subgoal, has_key);
    int here = dist[index_of(m, from)];
    if (from == subgoal) return {};  // already there; no move shortens the path
    if (here < 0) throw OracleError("subgoal unreachable from queried cell");
    std::vector<int> best;
    for (int a = 0; a < kNumActions; ++a) {
        Cell n = apply_action(from, a);
        if (!m.passable(n, has_key)) continue;
        if (dist[index_of(m, n)] == here - 1) best.push_back(a);
    }
    return best;
}

void MazeLayout::validate() const {
    auto check_cell = [&](Cell c, const char* what) {
        if (!in_bounds(c)) throw ConfigError("maze '" + name + "': " + what + " out of bounds");
        if (is_wall(c)) throw ConfigError("maze '" + name + "': " + what + " placed on a wall");
    };
    check_cell(start, "start");
    check_cell(key, "key");
    check_cell(door, "door");
    check_cell(goal, "goal");
    Cell cells[4] = {start, key, door, goal};
    const char* names[4] = {"start", "key", "door", "goal"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (cells[i] == cells[j])
                throw ConfigError("maze '" + name + "': " + names[i] + " and " + names[j] +
                                  " share a cell");
    // Border must be solid so the agent can never step outside.
    for (int x = 0; x < width; ++x)
        if (!is_wall({x, 0}) || !is_wall({x, height - 1}))
            throw ConfigError("maze '" + name + "': border row not solid");
    for (int y = 0; y < height; ++y)
        if (!is_wall({0, y}) || !is_wall({width - 1, y}))
            throw ConfigError("maze '" + name + "': border column not solid");
    // The whole task chain must be solvable: start->key with the door locked,
    // then key->door and door->goal with it open.
    auto reach = [&](Cell from, Cell to, bool k) {
        std::vector<int> d = bfs_distances(*this, to, k);
        return d[index_of(*this, from)] >= 0;
    };
    if (!reach(start, key, false))
        throw ConfigError("maze '" + name + "': key unreachable from start");
    if (!reach(key, door, true)) throw ConfigError("maze '" + name + "': door unreachable from key");
    if (!reach(door, goal, true)) throw ConfigError("maze '" + name + "': goal unreachable from door");
}

}  // namespace cenra
