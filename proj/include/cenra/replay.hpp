#pragma once

#include <optional>
#include <vector>

#include "cenra/env.hpp"
#include "cenra/gaussian.hpp"
#include "cenra/rng.hpp"

namespace cenra {

struct Transition {
    int task_id = 0;
    Observation obs;
    int action = 0;
    Observation next_obs;
    int next_action = 0;       // greedy action at next_obs when collected
    double r_env = 0.0;        // sparse task reward, 0 or 1
    double r_knw_stored = 0.0; // shaping reward sampled at collection time
    bool done = false;         // true only for real goal termination, not cutoffs
};

// Per-task proportions used to assemble a mixed batch. Must be non-negative
// and sum to 1 (within fp tolerance).
struct SamplingWeights {
    std::vector<double> w;
    void validate() const;
    static SamplingWeights uniform(int n);
};

// How many samples each task contributes to a batch of `batch` draws:
// floor(w_i * batch) each, remaining slots to the largest fractional parts,
// ties to the lowest task index. Sums to `batch` exactly.
std::vector<int> allocate(const SamplingWeights& weights, int batch);

// One FIFO ring per task over a shared transition pool. Supports per-task
// uniform sampling (policy updates) and weighted cross-task sampling (reward
// agent updates).
class ReplayBuffer {
  public:
    ReplayBuffer(int num_tasks, size_t capacity_per_task,
                 RewardSpace knw_space = RewardSpace{});

    void push(const Transition& t);

    int num_tasks() const { return static_cast<int>(rings_.size()); }
    size_t capacity_per_task() const { return capacity_; }
    size_t size(int task) const;
    size_t total_size() const;

    // Oldest-first access within one task's ring (tests, diagnostics).
    const Transition& at(int task, size_t i) const;

    // Uniform with replacement from one task; nullopt until that task has at
    // least `batch` transitions.
    std::optional<std::vector<Transition>> sample_task(int task, int batch, Rng& rng) const;

    // Weighted across tasks. Tasks whose ring is still empty forfeit their
    // quota: weights are renormalized over the non-empty ones. Returns an
    // empty vector when every ring is empty.
    std::vector<Transition> sample_cra(const SamplingWeights& weights, int batch, Rng& rng) const;

  private:
    struct Ring {
        std::vector<Transition> data;
        size_t head = 0;  // index of the oldest element once full
        bool full = false;
    };
    const Transition& ring_at(const Ring& r, size_t i) const;
    std::vector<Ring> rings_;
    size_t capacity_;
    RewardSpace knw_space_;
};

}  // namespace cenra
