#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cenra/adam.hpp"
#include "cenra/checkpoint.hpp"
#include "cenra/gaussian.hpp"
#include "cenra/net.hpp"
#include "cenra/replay.hpp"

namespace cenra {

struct RewardAgentConfig {
    RewardSpace space;
    std::vector<int> hidden{64, 64};
    Activation activation = Activation::relu;
    double lr_actor = 3e-4;
    double lr_critic = 1e-3;
    double gamma = 0.99;
    double tau = 5e-3;
    int actor_update_every = 2;  // actor steps on every 2nd update call
    // Added to the fresh actor's mean-head bias. A positive value starts every
    // proposed reward above the space's center, so the TD-weighted density
    // updates (which sharpen the current mode where delta > 0 and flatten it
    // where delta < 0) push rewarding state-actions toward r_max instead of an
    // arbitrary side of the space.
    double optimism = 0.0;
    void validate() const;
};

// The reward agent: a squashed-Gaussian actor that proposes a bounded shaping
// reward for any (observation, action) pair, and a state-value critic trained
// on the sparse environmental rewards. The critic's TD error both trains the
// critic and weights the actor's log-probabilities, so the actor learns to
// push probability mass toward rewards that precede environmental success.
class RewardAgent {
  public:
    RewardAgent(int obs_dim, int num_actions, RewardAgentConfig cfg, Rng& init_rng);
    // Restore from checkpoint sections "actor", "critic", "critic_target".
    RewardAgent(int obs_dim, int num_actions, RewardAgentConfig cfg,
                const std::vector<NetEntry>& nets);

    int obs_dim() const { return obs_dim_; }
    int num_actions() const { return num_actions_; }
    int input_dim() const { return obs_dim_ + num_actions_; }

    // The actor's input: observation features then a one-hot action.
    void build_input(std::span<const double> obs, int action, std::span<double> out) const;

    // Stochastic draw used during rollouts (one normal draw from `rng`).
    double reward_sample(std::span<const double> obs, int action, Rng& rng) const;
    // Deterministic center used inside policy updates.
    double reward_mean(std::span<const double> obs, int action) const;
    // Batched means for the (obs, action) pairs of a policy-update batch.
    std::vector<double> reward_mean_batch(std::span<const Transition> batch) const;

    GaussianHead head_at(std::span<const double> obs, int action) const;

    // Critic TD errors against the target critic, with terminal masking:
    //   delta_i = r_env + gamma * (1 - done) * V_target(s'_rwd) - V(s_rwd)
    // Returns (mean squared delta, per-item deltas).
    std::pair<double, std::vector<double>> critic_deltas(std::span<const Transition> batch) const;

    // Pure views of the two objectives over explicit parameter vectors, so
    // gradients can be cross-checked by finite differences. update() routes
    // through the same computations.
    double critic_loss_at(std::span<const Transition> batch,
                          std::span<const double> critic_params) const;
    std::vector<double> critic_grad_at(std::span<const Transition> batch,
                                       std::span<const double> critic_params) const;
    // Actor objective on explicit noise draws: -mean(log_prob * delta), the
    // deltas entering as constants.
    double actor_loss_at(std::span<const Transition> batch, std::span<const double> deltas,
                         std::span<const double> noise,
                         std::span<const double> actor_params) const;
    std::vector<double> actor_grad_at(std::span<const Transition> batch,
                                      std::span<const double> deltas,
                                      std::span<const double> noise,
                                      std::span<const double> actor_params) const;

    struct UpdateDiag {
        double critic_loss = 0.0;
        double actor_loss = 0.0;
        bool actor_stepped = false;
    };
    // One update on a mixed batch: critic step every call, actor step every
    // `actor_update_every`-th call (with fresh noise from `noise_rng`), then a
    // Polyak update of the target critic.
    UpdateDiag update(std::span<const Transition> batch, Rng& noise_rng);

    uint64_t updates_done() const { return update_count_; }
    const RewardAgentConfig& config() const { return cfg_; }

    const Mlp& actor_net() const { return actor_net_; }
    const Mlp& critic_net() const { return critic_net_; }
    std::vector<double>& actor_params() { return actor_params_; }
    std::vector<double>& critic_params() { return critic_params_; }
    std::vector<double>& target_critic_params() { return target_critic_params_; }
    const std::vector<double>& actor_params() const { return actor_params_; }
    const std::vector<double>& critic_params() const { return critic_params_; }
    const std::vector<double>& target_critic_params() const { return target_critic_params_; }

    std::vector<NetEntry> to_entries() const;
    uint64_t checksum() const;

  private:
    struct CriticEval {
        double loss = 0.0;
        std::vector<double> deltas;
        std::vector<double> grad;
    };
    struct ActorEval {
        double loss = 0.0;
        std::vector<double> grad;
    };
    std::vector<double> batch_inputs(std::span<const Transition> batch, bool next) const;
    CriticEval eval_critic(std::span<const Transition> batch,
                           std::span<const double> critic_params, bool want_grad) const;
    ActorEval eval_actor(std::span<const Transition> batch, std::span<const double> deltas,
                         std::span<const double> noise, std::span<const double> actor_params,
                         bool want_grad) const;
    void check_dims() const;
    int obs_dim_;
    int num_actions_;
    RewardAgentConfig cfg_;
    Mlp actor_net_;   // input_dim -> hidden -> 2 (mean, raw log-std)
    Mlp critic_net_;  // input_dim -> hidden -> 1
    std::vector<double> actor_params_, critic_params_, target_critic_params_;
    Adam actor_opt_, critic_opt_;
    uint64_t update_count_ = 0;
};

}  // namespace cenra
