#pragma once

#include <span>
#include <vector>

#include "cenra/adam.hpp"
#include "cenra/checkpoint.hpp"
#include "cenra/net.hpp"
#include "cenra/replay.hpp"

namespace cenra {

// r_pol = r_env + lambda * r_knw. The mixing factor must sit in (0, 1].
double augmented_reward(double r_env, double r_knw, double lambda);

struct DqnConfig {
    std::vector<int> hidden{64, 64};
    Activation activation = Activation::relu;
    double lr = 1e-3;
    double gamma = 0.99;
    double tau = 5e-3;
    double eps_start = 1.0;
    double eps_end = 0.05;
    uint64_t eps_decay_steps = 75000;  // linear anneal over this many act() calls
    void validate() const;
};

// Per-task DQN: epsilon-greedy behavior, uniform replay (held by the caller),
// soft target updates. act() also reports the last hidden layer's activations
// so the synchronization layer can compare what different tasks' policies are
// currently representing.
class DqnAgent {
  public:
    DqnAgent(int obs_dim, int num_actions, DqnConfig cfg, Rng& init_rng);
    DqnAgent(int obs_dim, int num_actions, DqnConfig cfg, const std::vector<NetEntry>& nets);

    struct ActResult {
        int action = 0;
        bool explored = false;
        std::vector<double> feature;  // penultimate-layer activations
    };
    // Epsilon-greedy over the online net; advances the exploration schedule.
    ActResult act(std::span<const double> obs, Rng& rng);

    int greedy_action(std::span<const double> obs) const;
    std::vector<double> q_values(std::span<const double> obs) const;
    double epsilon() const;  // value the next act() will use
    uint64_t steps() const { return act_count_; }

    struct UpdateDiag {
        double td_loss = 0.0;
        double mean_r_knw = 0.0;  // mean shaping term applied (0 when none)
    };
    // One TD step on the batch. `r_knw` (if non-empty) aligns with the batch
    // and is mixed in via augmented_reward; empty means plain sparse rewards.
    UpdateDiag update(std::span<const Transition> batch, std::span<const double> r_knw,
                      double lambda);

    // The TD objective as a pure function of explicit online parameters
    // (targets come from the fixed target net), for gradient cross-checks.
    double td_loss_at(std::span<const Transition> batch, std::span<const double> r_knw,
                      double lambda, std::span<const double> params) const;
    std::vector<double> td_grad_at(std::span<const Transition> batch,
                                   std::span<const double> r_knw, double lambda,
                                   std::span<const double> params) const;

    const DqnConfig& config() const { return cfg_; }
    const Mlp& net() const { return net_; }
    std::vector<double>& params() { return params_; }
    std::vector<double>& target_params() { return target_params_; }
    const std::vector<double>& params() const { return params_; }
    const std::vector<double>& target_params() const { return target_params_; }

    std::vector<NetEntry> to_entries() const;  // sections "q", "q_target"

  private:
    struct TdEval {
        double loss = 0.0;
        double mean_r_knw = 0.0;
        std::vector<double> grad;
    };
    TdEval eval_td(std::span<const Transition> batch, std::span<const double> r_knw,
                   double lambda, std::span<const double> params, bool want_grad) const;
    int obs_dim_;
    int num_actions_;
    DqnConfig cfg_;
    Mlp net_;
    std::vector<double> params_, target_params_;
    Adam opt_;
    uint64_t act_count_ = 0;
};

}  // namespace cenra
