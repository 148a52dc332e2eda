#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cenra {

// Which cross-task sampling weights feed the reward agent's batch mix.
enum class WeightMode { full, similarity_only, performance_only, uniform };
WeightMode weight_mode_from_string(const std::string& s);
std::string to_string(WeightMode m);

// Everything a run needs, merged from an INI-style file plus command-line
// overrides. Keys are "<section>.<name>"; unknown keys are rejected so typos
// fail loudly instead of silently training with defaults.
struct TrainConfig {
    // [suite]
    std::vector<std::filesystem::path> layouts;
    std::filesystem::path holdout;  // optional; used by transfer experiments
    int step_limit = 200;

    // [run]
    uint64_t total_steps = 150000;
    uint64_t seed = 0;
    uint64_t log_every = 500;
    int eval_episodes = 100;
    bool parallel_rollouts = false;

    // [policy]
    double gamma = 0.99;
    double lambda = 0.5;  // shaping mix-in factor
    int policy_batch = 128;
    uint64_t policy_burn_in = 10000;
    size_t buffer_capacity = 1000000;
    double policy_lr = 1e-3;
    double policy_tau = 5e-3;
    double eps_start = 1.0;
    double eps_end = 0.05;
    double eps_decay_fraction = 0.5;  // of total_steps
    std::vector<int> policy_hidden{32, 32};

    // [reward_agent]
    double r_min = -1.0;
    double r_max = 1.0;
    int cra_batch = 256;
    double cra_lr_actor = 3e-4;
    double cra_lr_critic = 1e-3;
    int cra_actor_update_every = 2;
    double cra_tau = 5e-3;
    uint64_t cra_burn_in = 5000;
    uint64_t cra_update_period = 1;  // outer iterations between updates
    double cra_optimism = 0.0;  // initial shift of the proposal mean head
    std::vector<int> cra_hidden{32, 32};

    // [sync]
    double alpha = 0.5;
    int window = 100;
    double floor_eps = 1e-6;
    WeightMode weight_mode = WeightMode::full;

    // Parse `file`, resolving relative layout paths against its directory.
    static TrainConfig load(const std::filesystem::path& file);
    // Apply one "<section>.<name>" key; ConfigError on unknown key/bad value.
    void set(const std::string& key, const std::string& value);
    void validate() const;
    // Canonical render of every effective setting; written next to run output
    // so a run is reproducible from its artifacts alone.
    std::string resolved() const;
};

}  // namespace cenra
