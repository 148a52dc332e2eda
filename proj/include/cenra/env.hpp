#pragma once

#include <cstdint>
#include <vector>

#include "cenra/grid.hpp"

namespace cenra {

struct Observation {
    std::vector<double> features;
};

// Agent position, key flag, and the key/door/goal positions, coordinates
// normalized to [0,1] by (width-1) and (height-1).
constexpr int kObservationDim = 9;
Observation encode_observation(const MazeLayout& m, Cell agent, bool has_key);

struct StepResult {
    Observation next_obs;
    double reward = 0.0;    // 1 exactly when the goal is reached, else 0
    bool done = false;      // reached the goal
    bool truncated = false; // hit the step limit without reaching it
};

// One maze with the key-door dynamics and a hard step limit per episode.
// Bumping a wall (or the locked door) leaves the agent in place and still
// burns a step.
class MazeEnv {
  public:
    MazeEnv(MazeLayout layout, int step_limit);

    // Start a fresh episode at the layout's start cell without the key. The
    // dynamics are deterministic; the seed is recorded so future stochastic
    // variants keep the same interface.
    Observation reset(uint64_t seed);
    // Start an episode from an arbitrary passable cell (used by evaluation).
    Observation reset_at(Cell at, bool has_key);

    StepResult step(int action);  // UsageError if the episode already ended

    const MazeLayout& layout() const { return layout_; }
    Cell agent() const { return agent_; }
    bool has_key() const { return has_key_; }
    int steps_taken() const { return steps_; }
    bool episode_active() const { return active_; }
    int step_limit() const { return step_limit_; }

  private:
    MazeLayout layout_;
    int step_limit_;
    Cell agent_{};
    bool has_key_ = false;
    int steps_ = 0;
    bool active_ = false;
    uint64_t episode_seed_ = 0;
};

}  // namespace cenra
