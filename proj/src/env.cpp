#include "cenra/env.hpp"

#include "cenra/errors.hpp"

namespace cenra {

Observation encode_observation(const MazeLayout& m, Cell agent, bool has_key) {
    double sx = 1.0 / (m.width - 1);
    double sy = 1.0 / (m.height - 1);
    Observation o;
    o.features = {agent.x * sx,  agent.y * sy,  has_key ? 1.0 : 0.0,
                  m.key.x * sx,  m.key.y * sy,  m.door.x * sx,
                  m.door.y * sy, m.goal.x * sx, m.goal.y * sy};
    return o;
}

MazeEnv::MazeEnv(MazeLayout layout, int step_limit)
    : layout_(std::move(layout)), step_limit_(step_limit) {
    if (step_limit_ < 1) throw ConfigError("step limit must be positive");
    layout_.validate();
}

Observation MazeEnv::reset(uint64_t seed) {
    episode_seed_ = seed;
    agent_ = layout_.start;
    has_key_ = false;
    steps_ = 0;
    active_ = true;
    return encode_observation(layout_, agent_, has_key_);
}

Observation MazeEnv::reset_at(Cell at, bool has_key) {
    if (!layout_.passable(at, has_key))
        throw UsageError("reset_at: cell is not passable in the given key state");
    episode_seed_ = 0;
    agent_ = at;
    has_key_ = has_key;
    if (agent_ == layout_.key) has_key_ = true;  // standing on the key collects it
    steps_ = 0;
    active_ = true;
    return encode_observation(layout_, agent_, has_key_);
}

StepResult MazeEnv::step(int action) {
    if (!active_) throw UsageError("step called on a finished episode; reset first");
    Cell next = apply_action(agent_, action);
    if (layout_.passable(next, has_key_)) agent_ = next;
    if (agent_ == layout_.key) has_key_ = true;
    ++steps_;

    StepResult r;
    if (agent_ == layout_.goal) {
        r.reward = 1.0;
        r.done = true;
    } else if (steps_ >= step_limit_) {
        r.truncated = true;
    }
    if (r.done || r.truncated) active_ = false;
    r.next_obs = encode_observation(layout_, agent_, has_key_);
    return r;
}

}  // namespace cenra
