#pragma once

#include <span>
#include <vector>

#include "cenra/replay.hpp"

namespace cenra {

// Rolling views of what each task's policy has been doing lately: the last K
// penultimate-layer feature vectors and the last K environmental rewards.
// Both feed the cross-task sampling weights.
class SyncState {
  public:
    SyncState(int num_tasks, int window, int feature_dim);

    void push_feature(int task, std::span<const double> f);
    void push_reward(int task, double r_env);

    // True once every task has at least one entry in both windows.
    bool ready() const;

    int num_tasks() const { return static_cast<int>(features_.size()); }
    int window() const { return window_; }
    int feature_dim() const { return feature_dim_; }

    // Mean feature vector per task over its window. UsageError if not ready.
    std::vector<std::vector<double>> feature_means() const;
    // Mean recent environmental reward per task. UsageError if not ready.
    std::vector<double> reward_tails() const;

  private:
    struct Window {
        std::vector<double> data;  // ring of rows (or scalars)
        size_t count = 0;          // rows pushed so far, saturates at window
        size_t next = 0;           // ring write position
    };
    int window_;
    int feature_dim_;
    std::vector<Window> features_;  // rows of feature_dim_
    std::vector<Window> rewards_;   // rows of 1
};

// Similarity-driven weights: centroid c of the per-task means, scaled dot
// products s_i = <c, H_i>/sqrt(D) floored at `floor_eps`, then a softmax over
// the reciprocals 1/s_i. Tasks far from the centroid get more draws.
SamplingWeights similarity_weights(const std::vector<std::vector<double>>& means,
                                   double floor_eps);

// Performance-driven weights: softmax over 1/max(tail_i, floor_eps). Tasks
// that have not seen reward lately get more draws.
SamplingWeights performance_weights(const std::vector<double>& tails, double floor_eps);

// w = alpha * similarity + (1 - alpha) * performance.
SamplingWeights combine_weights(const SamplingWeights& sim, const SamplingWeights& per,
                                double alpha);

// Max-subtracted softmax, safe for logits as large as 1/floor_eps.
std::vector<double> stable_softmax(std::span<const double> logits);

}  // namespace cenra
