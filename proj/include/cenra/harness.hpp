#pragma once

#include <array>
#include <filesystem>
#include <optional>

#include "cenra/config.hpp"
#include "cenra/dqn_agent.hpp"
#include "cenra/metrics.hpp"
#include "cenra/reward_agent.hpp"
#include "cenra/suite.hpp"
#include "cenra/sync.hpp"

namespace cenra {

// cenra: one shared reward agent fed by weighted cross-task batches.
// plain:  sparse rewards only, no reward agent.
// relara: one private reward agent per task, trained on that task alone.
enum class RunKind { cenra, plain, relara };
RunKind run_kind_from_string(const std::string& s);
std::string to_string(RunKind k);

enum class TransferMode { frozen, learning };

struct EvalResult {
    std::vector<double> task_returns;  // greedy success rate per task
    double overall = 0.0;
};

// Greedy rollouts from random pre-key reachable start cells (key cell
// excluded), `episodes` per task; success = reaching the goal within the step
// limit. Start cells are drawn from a stream derived from `seed`, so the same
// seed always measures the same start list.
EvalResult evaluate_suite(const std::vector<const DqnAgent*>& agents, const TaskSuite& suite,
                          int episodes, int step_limit, uint64_t seed);

struct RewardMapEntry {
    Cell cell;
    std::array<double, kNumActions> reward{};  // mean-mode shaping reward per action
    int argmax = 0;
    std::vector<int> oracle;  // first moves of shortest paths to the subgoal
    bool reachable = false;
};

struct RewardMapResult {
    bool has_key = false;
    std::vector<RewardMapEntry> entries;  // one per non-wall cell
    int compared = 0;  // reachable cells where the oracle has at least one move
    int agreed = 0;
    double agreement = 0.0;
};

// What the reward agent recommends at every cell of one maze, scored against
// the shortest-path oracle.
RewardMapResult reward_map(const RewardAgent& agent, const MazeLayout& layout, bool has_key);
void write_reward_map_json(const std::filesystem::path& file, const RewardMapResult& map,
                           const MazeLayout& layout);

// The training loop. Every outer iteration: each task takes one environment
// step (and, past burn-in, one TD update from its own replay ring); then the
// reward agent takes one update on a batch mixed across tasks according to
// the sync weights. All randomness comes from named streams of the run seed,
// so a run is a pure function of (config, seed).
class Trainer {
  public:
    Trainer(TaskSuite suite, TrainConfig cfg, RunKind kind);
    // Transfer: a fresh policy on one new task, reusing a trained reward
    // agent (frozen, or fine-tuning as the single task's shared agent).
    Trainer(MazeLayout task, TrainConfig cfg, const std::vector<NetEntry>& reward_ckpt,
            TransferMode mode);

    void run();

    RunKind kind() const { return kind_; }
    int num_tasks() const { return suite_.num_tasks(); }
    const TaskSuite& suite() const { return suite_; }
    const MetricsLog& metrics() const { return metrics_; }
    const DqnAgent& policy(int task) const { return agents_.at(task); }
    // The shared agent (idx 0) or a task's private one; null for plain runs.
    const RewardAgent* reward_agent(int idx = 0) const;

    EvalResult evaluate(uint64_t eval_seed) const;

    // dqn_task<i>.ckpt per task, cra.ckpt (shared) or cra_task<i>.ckpt (private).
    void save_checkpoints(const std::filesystem::path& dir) const;

  private:
    void step_task(int i, uint64_t iter);
    void update_reward_agents(uint64_t iter);
    void log_rows(uint64_t iter);
    RewardAgent& reward_source(int task);

    TrainConfig cfg_;
    RunKind kind_;
    TaskSuite suite_;
    bool frozen_ = false;
    uint64_t frozen_checksum_ = 0;

    std::vector<MazeEnv> envs_;
    std::vector<DqnAgent> agents_;
    std::vector<RewardAgent> rewarders_;
    ReplayBuffer replay_;
    SyncState sync_;
    MetricsLog metrics_;

    std::vector<Rng> act_rng_, knw_rng_, sample_rng_, cra_draw_rng_, cra_noise_rng_;

    std::vector<Observation> obs_;
    std::vector<double> episode_return_;
    std::vector<uint64_t> episode_count_;
    std::vector<std::optional<double>> last_return_, last_td_, last_mrk_;
    std::vector<std::optional<double>> last_cra_critic_, last_cra_actor_;
    std::optional<SamplingWeights> last_w_, last_w_sim_, last_w_per_;
};

}  // namespace cenra
