#include "cenra/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cenra/checkpoint.hpp"
#include "cenra/errors.hpp"
#include "cenra/harness.hpp"

namespace cenra {

namespace {

namespace fs = std::filesystem;

void write_eval_json(const fs::path& file, const EvalResult& ev, const TaskSuite& suite) {
    nlohmann::json j;
    nlohmann::json tasks = nlohmann::json::array();
    for (size_t i = 0; i < ev.task_returns.size(); ++i) {
        nlohmann::json t;
        t["task_id"] = i;
        t["maze"] = suite.tasks[i].name;
        t["mean_return"] = ev.task_returns[i];
        tasks.push_back(std::move(t));
    }
    j["tasks"] = std::move(tasks);
    j["overall"] = ev.overall;
    std::ofstream out(file);
    if (!out) throw IoError("cannot write eval results: " + file.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed on eval results: " + file.string());
}

void write_run_artifacts(Trainer& tr, const TrainConfig& cfg, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    {
        std::ofstream rc(out_dir / "resolved.cfg");
        if (!rc) throw IoError("cannot write resolved config in " + out_dir.string());
        rc << cfg.resolved();
    }
    tr.run();
    tr.metrics().write_csv(out_dir / "metrics.csv");
    tr.save_checkpoints(out_dir);
    EvalResult ev = tr.evaluate(cfg.seed);
    write_eval_json(out_dir / "eval.json", ev, tr.suite());
    std::printf("run complete: kind=%s overall_return=%.4f out=%s\n",
                to_string(tr.kind()).c_str(), ev.overall, out_dir.string().c_str());
}

struct CommonOpts {
    std::string config;
    std::string out = "out";
    int64_t seed = -1;
    bool parallel = false;

    TrainConfig load() const {
        TrainConfig cfg = TrainConfig::load(config);
        if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
        if (parallel) cfg.parallel_rollouts = true;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_parallel = true) {
    cmd->add_option("--config", o.config, "training configuration file")->required();
    cmd->add_option("--seed", o.seed, "override run.seed from the config");
    cmd->add_option("--out", o.out, "output directory for run artifacts");
    if (with_parallel)
        cmd->add_flag("--parallel-rollouts", o.parallel, "step tasks on separate threads");
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"multi-task maze training with a shared learned shaping reward"};
    app.require_subcommand(1);

    CommonOpts train_o;
    CLI::App* train = app.add_subcommand("train", "train the shared-reward system on a suite");
    add_common(train, train_o);

    CommonOpts base_o;
    std::string baseline_kind;
    CLI::App* base = app.add_subcommand("baseline", "train a comparison system on a suite");
    add_common(base, base_o);
    base->add_option("--baseline", baseline_kind, "plain | relara")->required();

    CommonOpts tr_o;
    std::string cra_path, task_path;
    bool freeze = false;
    CLI::App* transfer =
        app.add_subcommand("transfer", "train a fresh policy on one task with a saved reward agent");
    add_common(transfer, tr_o);
    transfer->add_option("--cra", cra_path, "reward agent checkpoint")->required();
    transfer->add_option("--task", task_path, "maze layout file of the new task")->required();
    transfer->add_flag("--freeze", freeze, "keep the reward agent fixed during transfer");

    CommonOpts ev_o;
    std::string ckpt_dir;
    int episodes = -1;
    CLI::App* eval = app.add_subcommand("eval", "evaluate saved policies on their suite");
    add_common(eval, ev_o, false);
    eval->add_option("--ckpt-dir", ckpt_dir, "directory holding dqn_task<i>.ckpt files")
        ->required();
    eval->add_option("--episodes", episodes, "episodes per task (default from config)");

    std::string map_cra, map_task, map_out = "reward_map.json", map_config;
    std::string has_key_str = "false";
    CLI::App* rmap = app.add_subcommand("reward-map", "dump the reward agent's per-cell advice");
    rmap->add_option("--cra", map_cra, "reward agent checkpoint")->required();
    rmap->add_option("--task", map_task, "maze layout file")->required();
    rmap->add_option("--has-key", has_key_str, "true | false: key state to map")
        ->check(CLI::IsMember({"true", "false"}));
    rmap->add_option("--out", map_out, "output JSON file");
    rmap->add_option("--config", map_config, "config supplying the reward bounds (optional)");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);  // prints help text or the parse diagnostic
        return rc == 0 ? 0 : 2;
    }

    if (*train) {
        TrainConfig cfg = train_o.load();
        Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::cenra);
        write_run_artifacts(tr, cfg, train_o.out);
    } else if (*base) {
        RunKind kind = run_kind_from_string(baseline_kind);
        if (kind == RunKind::cenra)
            throw ConfigError("--baseline expects plain or relara");
        TrainConfig cfg = base_o.load();
        Trainer tr(TaskSuite::load(cfg.layouts), cfg, kind);
        write_run_artifacts(tr, cfg, base_o.out);
    } else if (*transfer) {
        TrainConfig cfg = tr_o.load();
        MazeLayout task = MazeLayout::load(task_path);
        cfg.layouts = {task_path};  // the resolved config reflects the real task
        std::vector<NetEntry> ckpt = load_checkpoint(cra_path);
        Trainer tr(std::move(task), cfg, ckpt,
                   freeze ? TransferMode::frozen : TransferMode::learning);
        write_run_artifacts(tr, cfg, tr_o.out);
    } else if (*eval) {
        TrainConfig cfg = ev_o.load();
        if (episodes > 0) cfg.eval_episodes = episodes;
        TaskSuite suite = TaskSuite::load(cfg.layouts);
        DqnConfig dc;
        dc.hidden = cfg.policy_hidden;
        dc.lr = cfg.policy_lr;
        dc.gamma = cfg.gamma;
        dc.tau = cfg.policy_tau;
        std::vector<DqnAgent> agents;
        for (int i = 0; i < suite.num_tasks(); ++i) {
            fs::path f = fs::path(ckpt_dir) / ("dqn_task" + std::to_string(i) + ".ckpt");
            agents.emplace_back(kObservationDim, kNumActions, dc, load_checkpoint(f));
        }
        std::vector<const DqnAgent*> ptrs;
        for (const DqnAgent& a : agents) ptrs.push_back(&a);
        EvalResult ev = evaluate_suite(ptrs, suite, cfg.eval_episodes, cfg.step_limit, cfg.seed);
        fs::create_directories(ev_o.out);
        write_eval_json(fs::path(ev_o.out) / "eval.json", ev, suite);
        std::printf("eval complete: overall_return=%.4f\n", ev.overall);
    } else if (*rmap) {
        RewardAgentConfig rc;
        if (!map_config.empty()) {
            TrainConfig cfg = TrainConfig::load(map_config);
            rc.space = RewardSpace{cfg.r_min, cfg.r_max};
        }
        MazeLayout task = MazeLayout::load(map_task);
        RewardAgent agent(kObservationDim, kNumActions, rc, load_checkpoint(map_cra));
        RewardMapResult map = reward_map(agent, task, has_key_str == "true");
        write_reward_map_json(map_out, map, task);
        std::printf("reward map written: agreement=%.4f compared=%d out=%s\n", map.agreement,
                    map.compared, map_out.c_str());
    }
    return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cenra
