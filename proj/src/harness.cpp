#include "cenra/harness.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "cenra/errors.hpp"

namespace cenra {

RunKind run_kind_from_string(const std::string& s) {
    if (s == "cenra") return RunKind::cenra;
    if (s == "plain") return RunKind::plain;
    if (s == "relara") return RunKind::relara;
    throw ConfigError("unknown run kind: '" + s + "' (expected cenra|plain|relara)");
}

std::string to_string(RunKind k) {
    switch (k) {
        case RunKind::cenra: return "cenra";
        case RunKind::plain: return "plain";
        case RunKind::relara: return "relara";
    }
    return "cenra";
}

namespace {

DqnConfig make_dqn_config(const TrainConfig& cfg) {
    DqnConfig d;
    d.hidden = cfg.policy_hidden;
    d.lr = cfg.policy_lr;
    d.gamma = cfg.gamma;
    d.tau = cfg.policy_tau;
    d.eps_start = cfg.eps_start;
    d.eps_end = cfg.eps_end;
    d.eps_decay_steps =
        std::max<uint64_t>(1, static_cast<uint64_t>(cfg.eps_decay_fraction * cfg.total_steps));
    return d;
}

RewardAgentConfig make_cra_config(const TrainConfig& cfg) {
    RewardAgentConfig c;
    c.space = RewardSpace{cfg.r_min, cfg.r_max};
    c.hidden = cfg.cra_hidden;
    c.lr_actor = cfg.cra_lr_actor;
    c.lr_critic = cfg.cra_lr_critic;
    c.gamma = cfg.gamma;
    c.tau = cfg.cra_tau;
    c.actor_update_every = cfg.cra_actor_update_every;
    c.optimism = cfg.cra_optimism;
    return c;
}

}  // namespace

Trainer::Trainer(TaskSuite suite, TrainConfig cfg, RunKind kind)
    : cfg_(std::move(cfg)),
      kind_(kind),
      suite_(std::move(suite)),
      replay_(suite_.num_tasks(), cfg_.buffer_capacity, RewardSpace{cfg_.r_min, cfg_.r_max}),
      sync_(suite_.num_tasks(), cfg_.window, cfg_.policy_hidden.back()) {
    cfg_.validate();
    int n = num_tasks();
    for (int i = 0; i < n; ++i) {
        envs_.emplace_back(suite_.tasks[i], cfg_.step_limit);
        Rng init = make_stream(cfg_.seed, "init/dqn", i);
        agents_.emplace_back(kObservationDim, kNumActions, make_dqn_config(cfg_), init);
    }
    if (kind_ == RunKind::cenra) {
        Rng init = make_stream(cfg_.seed, "init/cra", 0);
        rewarders_.emplace_back(kObservationDim, kNumActions, make_cra_config(cfg_), init);
    } else if (kind_ == RunKind::relara) {
        for (int i = 0; i < n; ++i) {
            Rng init = make_stream(cfg_.seed, "init/cra", i);
            rewarders_.emplace_back(kObservationDim, kNumActions, make_cra_config(cfg_), init);
        }
    }
    for (int i = 0; i < n; ++i) {
        act_rng_.push_back(make_stream(cfg_.seed, "act", i));
        knw_rng_.push_back(make_stream(cfg_.seed, "knw_rollout", i));
        sample_rng_.push_back(make_stream(cfg_.seed, "dqn_sample", i));
        cra_draw_rng_.push_back(make_stream(cfg_.seed, "cra_draw", i));
        cra_noise_rng_.push_back(make_stream(cfg_.seed, "cra_noise", i));
    }
    obs_.resize(n);
    episode_return_.assign(n, 0.0);
    episode_count_.assign(n, 0);
    last_return_.resize(n);
    last_td_.resize(n);
    last_mrk_.resize(n);
    last_cra_critic_.resize(n);
    last_cra_actor_.resize(n);
    for (int i = 0; i < n; ++i) obs_[i] = envs_[i].reset(episode_count_[i]++);
}

Trainer::Trainer(MazeLayout task, TrainConfig cfg, const std::vector<NetEntry>& reward_ckpt,
                 TransferMode mode)
    : Trainer(TaskSuite::from_layouts({std::move(task)}), std::move(cfg), RunKind::cenra) {
    rewarders_.clear();
    rewarders_.emplace_back(kObservationDim, kNumActions, make_cra_config(cfg_), reward_ckpt);
    frozen_ = (mode == TransferMode::frozen);
    frozen_checksum_ = rewarders_[0].checksum();
}

const RewardAgent* Trainer::reward_agent(int idx) const {
    if (rewarders_.empty()) return nullptr;
    return &rewarders_.at(idx);
}

RewardAgent& Trainer::reward_source(int task) {
    return kind_ == RunKind::relara ? rewarders_.at(task) : rewarders_.at(0);
}

void Trainer::step_task(int i, uint64_t iter) {
    DqnAgent::ActResult ar = agents_[i].act(obs_[i].features, act_rng_[i]);
    StepResult sr = envs_[i].step(ar.action);

    double r_knw = 0.0;
    if (kind_ != RunKind::plain)
        r_knw = reward_source(i).reward_sample(obs_[i].features, ar.action, knw_rng_[i]);

    Transition t;
    t.task_id = i;
    t.obs = obs_[i];
    t.action = ar.action;
    t.next_obs = sr.next_obs;
    t.next_action = agents_[i].greedy_action(sr.next_obs.features);
    t.r_env = sr.reward;
    t.r_knw_stored = r_knw;
    t.done = sr.done;  // step-limit cutoffs keep bootstrapping
    replay_.push(t);

    sync_.push_feature(i, ar.feature);
    sync_.push_reward(i, sr.reward);
    episode_return_[i] += sr.reward;

    if (iter + 1 > cfg_.policy_burn_in) {
        auto batch = replay_.sample_task(i, cfg_.policy_batch, sample_rng_[i]);
        if (batch) {
            std::vector<double> rknw;
            if (kind_ != RunKind::plain) rknw = reward_source(i).reward_mean_batch(*batch);
            DqnAgent::UpdateDiag d = agents_[i].update(*batch, rknw, cfg_.lambda);
            last_td_[i] = d.td_loss;
            if (kind_ != RunKind::plain) last_mrk_[i] = d.mean_r_knw;
        }
    }

    if (sr.done || sr.truncated) {
        last_return_[i] = episode_return_[i];
        episode_return_[i] = 0.0;
        obs_[i] = envs_[i].reset(episode_count_[i]++);
    } else {
        obs_[i] = sr.next_obs;
    }
}

void Trainer::update_reward_agents(uint64_t iter) {
    if (kind_ == RunKind::plain || frozen_) return;
    if (iter + 1 <= cfg_.cra_burn_in) return;
    if ((iter + 1) % cfg_.cra_update_period != 0) return;

    if (kind_ == RunKind::cenra) {
        int n = num_tasks();
        SamplingWeights w = SamplingWeights::uniform(n);
        std::optional<SamplingWeights> wsim, wper;
        if (sync_.ready() && cfg_.weight_mode != WeightMode::uniform) {
            switch (cfg_.weight_mode) {
                case WeightMode::full:
                    wsim = similarity_weights(sync_.feature_means(), cfg_.floor_eps);
                    wper = performance_weights(sync_.reward_tails(), cfg_.floor_eps);
                    w = combine_weights(*wsim, *wper, cfg_.alpha);
                    break;
                case WeightMode::similarity_only:
                    wsim = similarity_weights(sync_.feature_means(), cfg_.floor_eps);
                    w = *wsim;
                    break;
                case WeightMode::performance_only:
                    wper = performance_weights(sync_.reward_tails(), cfg_.floor_eps);
                    w = *wper;
                    break;
                case WeightMode::uniform: break;
            }
        }
        std::vector<Transition> batch = replay_.sample_cra(w, cfg_.cra_batch, cra_draw_rng_[0]);
        if (!batch.empty()) {
            RewardAgent::UpdateDiag d = rewarders_[0].update(batch, cra_noise_rng_[0]);
            last_cra_critic_[0] = d.critic_loss;
            if (d.actor_stepped) last_cra_actor_[0] = d.actor_loss;
            last_w_ = w;
            last_w_sim_ = wsim;
            last_w_per_ = wper;
        }
    } else {  // relara: each task trains its own agent on its own data
        for (int j = 0; j < num_tasks(); ++j) {
            SamplingWeights one;
            one.w.assign(num_tasks(), 0.0);
            one.w[j] = 1.0;
            std::vector<Transition> batch =
                replay_.sample_cra(one, cfg_.cra_batch, cra_draw_rng_[j]);
            if (batch.empty()) continue;
            RewardAgent::UpdateDiag d = rewarders_[j].update(batch, cra_noise_rng_[j]);
            last_cra_critic_[j] = d.critic_loss;
            if (d.actor_stepped) last_cra_actor_[j] = d.actor_loss;
        }
    }
}

void Trainer::log_rows(uint64_t iter) {
    for (int i = 0; i < num_tasks(); ++i) {
        MetricsRow r;
        r.step = iter + 1;
        r.task_id = i;
        r.episodic_return = last_return_[i];
        r.td_loss = last_td_[i];
        r.epsilon = agents_[i].epsilon();
        if (kind_ != RunKind::plain) {
            r.mean_r_knw = last_mrk_[i];
            int j = kind_ == RunKind::relara ? i : 0;
            r.cra_critic_loss = last_cra_critic_[j];
            r.cra_actor_loss = last_cra_actor_[j];
        }
        if (kind_ == RunKind::cenra && last_w_) {
            r.w = last_w_->w[i];
            if (last_w_sim_) r.w_sim = last_w_sim_->w[i];
            if (last_w_per_) r.w_per = last_w_per_->w[i];
        }
        metrics_.append(std::move(r));
    }
}

void Trainer::run() {
    int n = num_tasks();
    for (uint64_t iter = 0; iter < cfg_.total_steps; ++iter) {
        if (cfg_.parallel_rollouts && n > 1) {
            // Tasks share nothing during their step (own env, agent, replay
            // ring, sync windows, rng streams), so this matches the
            // sequential order bit for bit.
            std::vector<std::thread> workers;
            workers.reserve(n);
            for (int i = 0; i < n; ++i)
                workers.emplace_back([this, i, iter] { step_task(i, iter); });
            for (auto& t : workers) t.join();
        } else {
            for (int i = 0; i < n; ++i) step_task(i, iter);
        }
        update_reward_agents(iter);
        if ((iter + 1) % cfg_.log_every == 0) log_rows(iter);
    }
    if (frozen_ && rewarders_[0].checksum() != frozen_checksum_)
        throw UsageError("frozen reward agent changed during transfer");
}

EvalResult Trainer::evaluate(uint64_t eval_seed) const {
    std::vector<const DqnAgent*> ptrs;
    for (const DqnAgent& a : agents_) ptrs.push_back(&a);
    return evaluate_suite(ptrs, suite_, cfg_.eval_episodes, cfg_.step_limit, eval_seed);
}

void Trainer::save_checkpoints(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (int i = 0; i < num_tasks(); ++i)
        save_checkpoint(dir / ("dqn_task" + std::to_string(i) + ".ckpt"),
                        agents_[i].to_entries());
    if (kind_ == RunKind::cenra) {
        save_checkpoint(dir / "cra.ckpt", rewarders_[0].to_entries());
    } else if (kind_ == RunKind::relara) {
        for (int i = 0; i < num_tasks(); ++i)
            save_checkpoint(dir / ("cra_task" + std::to_string(i) + ".ckpt"),
                            rewarders_[i].to_entries());
    }
}

EvalResult evaluate_suite(const std::vector<const DqnAgent*>& agents, const TaskSuite& suite,
                          int episodes, int step_limit, uint64_t seed) {
    if (agents.size() != suite.tasks.size())
        throw UsageError("evaluate: one agent per task required");
    if (episodes < 1) throw UsageError("evaluate: episodes must be positive");
    EvalResult res;
    for (size_t k = 0; k < suite.tasks.size(); ++k) {
        const MazeLayout& layout = suite.tasks[k];
        MazeEnv env(layout, step_limit);
        Rng rng = make_stream(seed, "eval", k);
        std::vector<Cell> starts = reachable_cells(layout, false);
        // Starting on the key cell would begin the episode key-in-hand;
        // evaluation measures the full fetch-then-deliver chain.
        std::erase(starts, layout.key);
        double total = 0.0;
        for (int ep = 0; ep < episodes; ++ep) {
            Cell c = starts[uniform_int(rng, starts.size())];
            Observation o = env.reset_at(c, false);
            while (true) {
                StepResult sr = env.step(agents[k]->greedy_action(o.features));
                if (sr.done) {
                    total += sr.reward;
                    break;
                }
                if (sr.truncated) break;
                o = sr.next_obs;
            }
        }
        res.task_returns.push_back(total / episodes);
    }
    for (double v : res.task_returns) res.overall += v;
    res.overall /= static_cast<double>(res.task_returns.size());
    return res;
}

RewardMapResult reward_map(const RewardAgent& agent, const MazeLayout& layout, bool has_key) {
    RewardMapResult res;
    res.has_key = has_key;
    std::vector<Cell> reach = reachable_cells(layout, has_key);
    auto is_reachable = [&](Cell c) { return std::find(reach.begin(), reach.end(), c) != reach.end(); };
    for (Cell c : layout.open_cells()) {
        RewardMapEntry e;
        e.cell = c;
        Observation o = encode_observation(layout, c, has_key);
        for (int a = 0; a < kNumActions; ++a) e.reward[a] = agent.reward_mean(o.features, a);
        e.argmax = static_cast<int>(
            std::max_element(e.reward.begin(), e.reward.end()) - e.reward.begin());
        e.reachable = is_reachable(c);
        // Passable-but-unreachable cells (beyond the locked door, say) have no
        // path to the subgoal, so the oracle is only consulted where a path
        // exists; reachability guarantees one.
        if (e.reachable) e.oracle = oracle_actions(layout, c, has_key);
        if (e.reachable && !e.oracle.empty()) {
            ++res.compared;
            if (std::find(e.oracle.begin(), e.oracle.end(), e.argmax) != e.oracle.end())
                ++res.agreed;
        }
        res.entries.push_back(std::move(e));
    }
    res.agreement = res.compared > 0 ? static_cast<double>(res.agreed) / res.compared : 0.0;
    return res;
}

void write_reward_map_json(const std::filesystem::path& file, const RewardMapResult& map,
                           const MazeLayout& layout) {
    nlohmann::json j;
    j["maze"] = layout.name;
    j["width"] = layout.width;
    j["height"] = layout.height;
    j["has_key"] = map.has_key;
    j["agreement"] = map.agreement;
    j["compared"] = map.compared;
    j["agreed"] = map.agreed;
    nlohmann::json cells = nlohmann::json::array();
    for (const RewardMapEntry& e : map.entries) {
        nlohmann::json c;
        c["x"] = e.cell.x;
        c["y"] = e.cell.y;
        c["rewards"] = e.reward;
        c["argmax"] = e.argmax;
        c["oracle"] = e.oracle;
        c["reachable"] = e.reachable;
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    std::ofstream out(file);
    if (!out) throw IoError("cannot write reward map: " + file.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed on reward map: " + file.string());
}

}  // namespace cenra
