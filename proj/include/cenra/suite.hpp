#pragma once

#include <filesystem>
#include <vector>

#include "cenra/grid.hpp"

namespace cenra {

// The set of training tasks. All layouts must share one grid shape so a
// single observation encoding (and a single reward agent) covers them all.
struct TaskSuite {
    std::vector<MazeLayout> tasks;

    int num_tasks() const { return static_cast<int>(tasks.size()); }
    static TaskSuite load(const std::vector<std::filesystem::path>& files);
    static TaskSuite from_layouts(std::vector<MazeLayout> layouts);
};

}  // namespace cenra
