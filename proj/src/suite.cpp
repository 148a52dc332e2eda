#include "cenra/suite.hpp"

#include "cenra/errors.hpp"

namespace cenra {

TaskSuite TaskSuite::from_layouts(std::vector<MazeLayout> layouts) {
    if (layouts.empty()) throw ConfigError("task suite needs at least one maze");
    for (const MazeLayout& m : layouts) {
        m.validate();
        if (m.width != layouts[0].width || m.height != layouts[0].height)
            throw ConfigError("maze '" + m.name + "' has shape " + std::to_string(m.width) + "x" +
                              std::to_string(m.height) + " but the suite uses " +
                              std::to_string(layouts[0].width) + "x" +
                              std::to_string(layouts[0].height));
    }
    TaskSuite s;
    s.tasks = std::move(layouts);
    return s;
}

TaskSuite TaskSuite::load(const std::vector<std::filesystem::path>& files) {
    std::vector<MazeLayout> layouts;
    layouts.reserve(files.size());
    for (const auto& f : files) layouts.push_back(MazeLayout::load(f));
    return from_layouts(std::move(layouts));
}

}  // namespace cenra
