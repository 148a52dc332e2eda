// Release gate. Each numbered criterion prints exactly one PASS/FAIL line;
// the exit code is the number of failures. The math criteria (5, 6) run
// first because everything else is pointless if gradients or weights are
// wrong; the training criteria then share artifacts: criterion 1's runs
// feed the transfer (2), reward-map (3), variance (4), and determinism (7)
// checks. Expect a couple of hours of wall time on one core.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "cenra/checkpoint.hpp"
#include "cenra/dqn_agent.hpp"
#include "cenra/env.hpp"
#include "cenra/errors.hpp"
#include "cenra/harness.hpp"
#include "cenra/net.hpp"
#include "cenra/replay.hpp"
#include "cenra/reward_agent.hpp"
#include "cenra/rng.hpp"
#include "cenra/sync.hpp"
#include "../oracles.hpp"

using namespace cenra;
namespace fs = std::filesystem;

namespace {

constexpr int kSeeds = 5;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void progress(const std::string& msg) {
    std::fprintf(stderr, "[acceptance] %s\n", msg.c_str());
}

std::string fmt(double v, const char* spec = "%.4f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

// ---------------------------------------------------------------- criterion 5

Transition rand_transition(int obs_dim, int num_actions, Rng& rng) {
    Transition t;
    t.obs.features.resize(obs_dim);
    t.next_obs.features.resize(obs_dim);
    for (double& v : t.obs.features) v = uniform_real(rng);
    for (double& v : t.next_obs.features) v = uniform_real(rng);
    t.action = static_cast<int>(uniform_int(rng, num_actions));
    t.next_action = static_cast<int>(uniform_int(rng, num_actions));
    t.r_env = uniform_int(rng, 2) ? 1.0 : 0.0;
    t.done = uniform_int(rng, 4) == 0;
    return t;
}

std::vector<Transition> rand_batch(int n, int obs_dim, int num_actions, Rng& rng) {
    std::vector<Transition> batch;
    for (int i = 0; i < n; ++i) batch.push_back(rand_transition(obs_dim, num_actions, rng));
    return batch;
}

double min_hidden_preact(const NetSpec& spec, const std::vector<double>& params,
                         const std::vector<double>& input) {
    ParamLayout layout = ParamLayout::of(spec);
    std::vector<double> cur = input;
    double closest = 1e300;
    for (size_t l = 0; l + 1 < layout.layers.size(); ++l) {
        const LayerSlice& s = layout.layers[l];
        std::vector<double> next(s.out, 0.0);
        for (int o = 0; o < s.out; ++o) {
            double acc = params[s.b_off + o];
            for (int i = 0; i < s.in; ++i) acc += cur[i] * params[s.w_off + (size_t)i * s.out + o];
            closest = std::min(closest, std::fabs(acc));
            next[o] = spec.activation == Activation::relu ? std::max(0.0, acc) : std::tanh(acc);
        }
        cur = std::move(next);
    }
    return closest;
}

// Worst relative error of net backward (parameter and input gradients)
// against central differences over `instances` accepted random nets.
double fd_sweep_net(int instances) {
    Rng rng = make_stream(101, "acceptance/net", 0);
    double worst = 0.0;
    int accepted = 0, attempts = 0;
    while (accepted < instances && attempts < instances * 10) {
        ++attempts;
        NetSpec spec;
        spec.input_dim = 1 + static_cast<int>(uniform_int(rng, 4));
        int depth = 1 + static_cast<int>(uniform_int(rng, 2));
        for (int l = 0; l < depth; ++l)
            spec.hidden.push_back(1 + static_cast<int>(uniform_int(rng, 4)));
        spec.output_dim = 1 + static_cast<int>(uniform_int(rng, 3));
        spec.activation = accepted % 2 ? Activation::relu : Activation::tanh;
        Mlp net(spec);
        std::vector<double> p = net.init_params(rng);
        int batch = 1 + static_cast<int>(uniform_int(rng, 3));
        std::vector<double> inputs((size_t)batch * spec.input_dim);
        for (double& v : inputs) v = uniform_real(rng) * 2 - 1;
        if (spec.activation == Activation::relu) {
            // finite differences lie within h of a relu kink
            bool near_kink = false;
            for (int b = 0; b < batch && !near_kink; ++b) {
                std::vector<double> one(inputs.begin() + (size_t)b * spec.input_dim,
                                        inputs.begin() + (size_t)(b + 1) * spec.input_dim);
                near_kink = min_hidden_preact(spec, p, one) < 1e-3;
            }
            if (near_kink) continue;
        }
        ++accepted;
        std::vector<double> cot((size_t)batch * spec.output_dim);
        for (double& v : cot) v = uniform_real(rng) * 2 - 1;
        auto loss = [&](const std::vector<double>& params) {
            Mlp::Workspace ws;
            std::vector<double> out((size_t)batch * spec.output_dim);
            net.forward(params, inputs, batch, ws, out);
            double acc = 0;
            for (size_t i = 0; i < out.size(); ++i) acc += cot[i] * out[i];
            return acc;
        };
        Mlp::Workspace ws;
        std::vector<double> out((size_t)batch * spec.output_dim);
        net.forward(p, inputs, batch, ws, out);
        std::vector<double> grad(net.param_count(), 0.0);
        std::vector<double> input_grad(inputs.size(), 0.0);
        net.backward(p, ws, cot, grad, input_grad);
        worst = std::max(worst, test_oracles::max_rel_err(grad, test_oracles::fd_gradient(loss, p)));
        auto loss_in = [&](const std::vector<double>& ins) {
            Mlp::Workspace w2;
            std::vector<double> o2((size_t)batch * spec.output_dim);
            net.forward(p, ins, batch, w2, o2);
            double acc = 0;
            for (size_t i = 0; i < o2.size(); ++i) acc += cot[i] * o2[i];
            return acc;
        };
        worst = std::max(worst,
                         test_oracles::max_rel_err(input_grad,
                                                   test_oracles::fd_gradient(loss_in, inputs)));
    }
    if (accepted < instances) return 1e9;  // could not draw enough clean nets
    return worst;
}

RewardAgentConfig smooth_cra_cfg() {
    RewardAgentConfig cfg;
    cfg.hidden = {8, 8};
    cfg.activation = Activation::tanh;
    return cfg;
}

double fd_sweep_cra_critic(int instances) {
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        Rng init = make_stream(102, "acceptance/critic", i);
        RewardAgent agent(3, 4, smooth_cra_cfg(), init);
        Rng data = make_stream(103, "acceptance/critic_data", i);
        auto batch = rand_batch(6, 3, 4, data);
        std::vector<double> p = agent.critic_params();
        auto loss = [&](const std::vector<double>& params) {
            return agent.critic_loss_at(batch, params);
        };
        worst = std::max(worst, test_oracles::max_rel_err(agent.critic_grad_at(batch, p),
                                                          test_oracles::fd_gradient(loss, p)));
    }
    return worst;
}

double fd_sweep_cra_actor(int instances) {
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        Rng init = make_stream(104, "acceptance/actor", i);
        RewardAgent agent(3, 4, smooth_cra_cfg(), init);
        Rng data = make_stream(105, "acceptance/actor_data", i);
        auto batch = rand_batch(6, 3, 4, data);
        std::vector<double> deltas(batch.size()), noise(batch.size());
        for (double& v : deltas) v = uniform_real(data) * 2 - 1;
        for (double& v : noise) v = normal(data);
        bool clamped = false;  // the log-std clamp kink would invalidate FD
        for (const Transition& t : batch) {
            GaussianHead h = agent.head_at(t.obs.features, t.action);
            clamped |= h.log_std < kLogStdMin + 1e-3 || h.log_std > kLogStdMax - 1e-3;
        }
        if (clamped) return 1e9;  // never happens at init scale
        std::vector<double> p = agent.actor_params();
        auto loss = [&](const std::vector<double>& params) {
            return agent.actor_loss_at(batch, deltas, noise, params);
        };
        worst = std::max(worst,
                         test_oracles::max_rel_err(agent.actor_grad_at(batch, deltas, noise, p),
                                                   test_oracles::fd_gradient(loss, p)));
    }
    return worst;
}

double fd_sweep_dqn(int instances) {
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        DqnConfig cfg;
        cfg.hidden = {8, 8};
        cfg.activation = Activation::tanh;
        Rng init = make_stream(106, "acceptance/dqn", i);
        DqnAgent agent(3, 4, cfg, init);
        Rng data = make_stream(107, "acceptance/dqn_data", i);
        auto batch = rand_batch(6, 3, 4, data);
        std::vector<double> r_knw;
        if (i % 2) {
            r_knw.resize(batch.size());
            for (double& v : r_knw) v = uniform_real(data) * 2 - 1;
        }
        std::vector<double> p = agent.params();
        auto loss = [&](const std::vector<double>& params) {
            return agent.td_loss_at(batch, r_knw, 0.5, params);
        };
        worst = std::max(worst, test_oracles::max_rel_err(agent.td_grad_at(batch, r_knw, 0.5, p),
                                                          test_oracles::fd_gradient(loss, p)));
    }
    return worst;
}

void criterion5() {
    progress("criterion 5: gradient oracles, 100 instances per family");
    double t0 = cpu_seconds();
    double net = fd_sweep_net(100);
    double critic = fd_sweep_cra_critic(100);
    double actor = fd_sweep_cra_actor(100);
    double td = fd_sweep_dqn(100);
    double secs = cpu_seconds() - t0;
    bool pass = net < 1e-4 && critic < 1e-4 && actor < 1e-3 && td < 1e-4 && secs < 60.0;
    report(5, pass,
           "worst rel err: net " + fmt(net, "%.2e") + ", cra critic " + fmt(critic, "%.2e") +
               ", cra actor " + fmt(actor, "%.2e") + ", dqn td " + fmt(td, "%.2e") + "; " +
               fmt(secs, "%.1f") + " s");
}

// ---------------------------------------------------------------- criterion 6

bool is_simplex(const std::vector<double>& w) {
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) return false;
        sum += x;
    }
    return std::fabs(sum - 1.0) < 1e-9;
}

int sync_violations() {
    Rng rng = make_stream(108, "acceptance/sync", 0);
    int bad = 0;
    auto fail = [&](const char* what, int trial) {
        ++bad;
        std::fprintf(stderr, "[acceptance] sync violation: %s (trial %d)\n", what, trial);
    };
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(uniform_int(rng, 5));
        int d = 3 + static_cast<int>(uniform_int(rng, 6));
        std::vector<std::vector<double>> means(n, std::vector<double>(d));
        for (auto& row : means)
            for (double& v : row) v = uniform_real(rng) * 2 - 1;
        std::vector<double> tails(n);
        for (double& v : tails) v = uniform_int(rng, 5) == 0 ? 0.0 : uniform_real(rng);
        double alpha = uniform_real(rng);

        SamplingWeights sim = similarity_weights(means, 1e-6);
        SamplingWeights per = performance_weights(tails, 1e-6);
        SamplingWeights w = combine_weights(sim, per, alpha);
        if (!is_simplex(sim.w) || !is_simplex(per.w) || !is_simplex(w.w)) fail("simplex", trial);

        // permutation equivariance: relabeling tasks relabels weights
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[uniform_int(rng, static_cast<uint64_t>(i) + 1)]);
        std::vector<std::vector<double>> pmeans(n);
        std::vector<double> ptails(n);
        for (int i = 0; i < n; ++i) {
            pmeans[i] = means[perm[i]];
            ptails[i] = tails[perm[i]];
        }
        SamplingWeights psim = similarity_weights(pmeans, 1e-6);
        SamplingWeights pper = performance_weights(ptails, 1e-6);
        for (int i = 0; i < n; ++i) {
            if (std::fabs(psim.w[i] - sim.w[perm[i]]) > 1e-12) fail("sim permutation", trial);
            if (std::fabs(pper.w[i] - per.w[perm[i]]) > 1e-12) fail("per permutation", trial);
        }

        // lower recent reward never gets a lower performance weight
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (tails[i] < tails[j] && per.w[i] < per.w[j] - 1e-12)
                    fail("per monotonicity", trial);

        // endpoints of the convex mix
        SamplingWeights all_sim = combine_weights(sim, per, 1.0);
        SamplingWeights all_per = combine_weights(sim, per, 0.0);
        for (int i = 0; i < n; ++i) {
            if (std::fabs(all_sim.w[i] - sim.w[i]) > 1e-15) fail("alpha=1 endpoint", trial);
            if (std::fabs(all_per.w[i] - per.w[i]) > 1e-15) fail("alpha=0 endpoint", trial);
        }
    }

    // identical feature means: no task stands out, weights uniform
    std::vector<std::vector<double>> same(4, std::vector<double>{0.3, -0.2, 0.9});
    SamplingWeights u = similarity_weights(same, 1e-6);
    for (double x : u.w)
        if (std::fabs(x - 0.25) > 1e-12) fail("identical means uniform", -1);

    // floor behavior: zero tails hit the floor and share the mass; a single
    // starving task takes the largest share
    SamplingWeights all_zero = performance_weights({0.0, 0.0, 0.0}, 1e-6);
    for (double x : all_zero.w)
        if (std::fabs(x - 1.0 / 3.0) > 1e-12) fail("all-floored uniform", -1);
    // a floored zero tail saturates the softmax; the rest underflow to ~0
    SamplingWeights starve = performance_weights({0.0, 0.6, 0.8}, 1e-6);
    if (!(starve.w[0] > 0.99 && starve.w[1] >= starve.w[2])) fail("starving order", -1);
    if (!is_simplex(starve.w)) fail("starving simplex", -1);

    return bad;
}

int replay_violations() {
    Rng rng = make_stream(109, "acceptance/replay", 0);
    int bad = 0;
    // allocation: exact sum, per-task counts within one of the exact share
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(uniform_int(rng, 5));
        std::vector<double> raw(n);
        double sum = 0.0;
        for (double& v : raw) {
            v = uniform_real(rng) + 1e-3;
            sum += v;
        }
        SamplingWeights w;
        for (double v : raw) w.w.push_back(v / sum);
        int batch = static_cast<int>(uniform_int(rng, 500));
        std::vector<int> counts = allocate(w, batch);
        int total = std::accumulate(counts.begin(), counts.end(), 0);
        if (total != batch) ++bad;
        for (int i = 0; i < n; ++i) {
            int fl = static_cast<int>(std::floor(w.w[i] * batch));
            if (counts[i] < fl || counts[i] > fl + 1) ++bad;
        }
    }

    // empirical proportions across a live buffer: 10k draws land within 0.01
    ReplayBuffer buf(3, 4096);
    Rng fill = make_stream(110, "acceptance/replay_fill", 0);
    for (int task = 0; task < 3; ++task) {
        for (int i = 0; i < 1500; ++i) {
            Transition t = rand_transition(4, kNumActions, fill);
            t.task_id = task;
            t.r_knw_stored = 0.0;
            buf.push(t);
        }
    }
    SamplingWeights mix{{0.5, 0.3, 0.2}};
    Rng draw = make_stream(111, "acceptance/replay_draw", 0);
    std::vector<Transition> got = buf.sample_cra(mix, 10000, draw);
    if (got.size() != 10000) ++bad;
    std::vector<int> hist(3, 0);
    for (const Transition& t : got) ++hist[t.task_id];
    for (int i = 0; i < 3; ++i)
        if (std::fabs(hist[i] / 10000.0 - mix.w[i]) > 0.01) ++bad;

    // an empty ring forfeits its quota to the live ones
    ReplayBuffer two(3, 4096);
    for (int task = 0; task < 3; task += 2) {
        for (int i = 0; i < 1500; ++i) {
            Transition t = rand_transition(4, kNumActions, fill);
            t.task_id = task;
            t.r_knw_stored = 0.0;
            two.push(t);
        }
    }
    std::vector<Transition> got2 = two.sample_cra(mix, 10000, draw);
    if (got2.size() != 10000) ++bad;
    std::vector<int> hist2(3, 0);
    for (const Transition& t : got2) ++hist2[t.task_id];
    if (hist2[1] != 0) ++bad;
    if (std::fabs(hist2[0] / 10000.0 - 0.5 / 0.7) > 0.01) ++bad;
    if (std::fabs(hist2[2] / 10000.0 - 0.2 / 0.7) > 0.01) ++bad;

    return bad;
}

void criterion6() {
    progress("criterion 6: sync invariants and replay allocation properties");
    double t0 = cpu_seconds();
    int sync_bad = sync_violations();
    int replay_bad = replay_violations();
    double secs = cpu_seconds() - t0;
    bool pass = sync_bad == 0 && replay_bad == 0 && secs < 60.0;
    report(6, pass,
           "sync violations " + std::to_string(sync_bad) + ", replay violations " +
               std::to_string(replay_bad) + "; " + fmt(secs, "%.1f") + " s");
}

// ------------------------------------------------------- training criteria

struct SeedRuns {
    std::vector<double> cenra_overall, relara_overall, plain_overall;
    std::vector<std::vector<double>> cenra_tasks;  // per seed, per task
    std::vector<double> seed_minutes;              // cpu minutes per seed, all 3 runs
    std::string seed0_csv;                         // cenra seed-0 metrics bytes
};

SeedRuns run_criterion1(const TrainConfig& base, const fs::path& work) {
    SeedRuns out;
    for (uint64_t seed = 0; seed < kSeeds; ++seed) {
        TrainConfig cfg = base;
        cfg.seed = seed;
        double t0 = cpu_seconds();

        progress("criterion 1: seed " + std::to_string(seed) + " cenra");
        {
            Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::cenra);
            tr.run();
            EvalResult ev = tr.evaluate(seed);
            out.cenra_overall.push_back(ev.overall);
            out.cenra_tasks.push_back(ev.task_returns);
            fs::path dir = work / ("c1_cenra_seed" + std::to_string(seed));
            fs::create_directories(dir);
            tr.save_checkpoints(dir);
            if (seed == 0) {
                out.seed0_csv = tr.metrics().to_csv();
                tr.metrics().write_csv(dir / "metrics.csv");
            }
        }

        progress("criterion 1: seed " + std::to_string(seed) + " relara");
        {
            Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::relara);
            tr.run();
            out.relara_overall.push_back(tr.evaluate(seed).overall);
        }

        progress("criterion 1: seed " + std::to_string(seed) + " plain");
        {
            Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::plain);
            tr.run();
            out.plain_overall.push_back(tr.evaluate(seed).overall);
        }

        out.seed_minutes.push_back((cpu_seconds() - t0) / 60.0);
    }
    return out;
}

void criterion1(const SeedRuns& r) {
    double cen = mean(r.cenra_overall);
    double rel = mean(r.relara_overall);
    double pla = mean(r.plain_overall);
    double worst_min = *std::max_element(r.seed_minutes.begin(), r.seed_minutes.end());
    bool pass = cen > rel && rel > pla && cen >= 0.85 && cen - pla >= 0.10 && worst_min < 30.0;
    report(1, pass,
           "cenra " + fmt(cen) + " vs relara " + fmt(rel) + " vs plain " + fmt(pla) +
               "; margin " + fmt(cen - pla) + "; worst seed " + fmt(worst_min, "%.1f") +
               " cpu-min");
}

void criterion2(const TrainConfig& base, const fs::path& work) {
    std::vector<double> frozen, learning, plain;
    for (uint64_t seed = 0; seed < kSeeds; ++seed) {
        TrainConfig cfg = base;
        cfg.layouts = {base.holdout};
        cfg.total_steps = base.total_steps / 2;
        cfg.seed = seed;
        fs::path ckpt = work / ("c1_cenra_seed" + std::to_string(seed)) / "cra.ckpt";
        std::vector<NetEntry> nets = load_checkpoint(ckpt);

        progress("criterion 2: seed " + std::to_string(seed) + " frozen/learning/plain");
        {
            Trainer tr(MazeLayout::load(base.holdout), cfg, nets, TransferMode::frozen);
            tr.run();
            frozen.push_back(tr.evaluate(seed).overall);
        }
        {
            Trainer tr(MazeLayout::load(base.holdout), cfg, nets, TransferMode::learning);
            tr.run();
            learning.push_back(tr.evaluate(seed).overall);
        }
        {
            Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::plain);
            tr.run();
            plain.push_back(tr.evaluate(seed).overall);
        }
    }
    double fr = mean(frozen), le = mean(learning), pl = mean(plain);
    bool pass = fr >= pl + 0.15 && le >= fr;
    report(2, pass,
           "frozen " + fmt(fr) + " vs plain " + fmt(pl) + " (need +0.15); learning " + fmt(le) +
               " >= frozen");
}

void criterion3(const TrainConfig& base, const fs::path& work) {
    progress("criterion 3: reward-map agreement across seeds");
    TaskSuite suite = TaskSuite::load(base.layouts);
    std::vector<double> per_seed;
    std::string seed_list;
    for (uint64_t seed = 0; seed < kSeeds; ++seed) {
        RewardAgentConfig rc;
        rc.space = RewardSpace{base.r_min, base.r_max};
        fs::path ckpt = work / ("c1_cenra_seed" + std::to_string(seed)) / "cra.ckpt";
        RewardAgent agent(kObservationDim, kNumActions, rc, load_checkpoint(ckpt));
        double maze_sum = 0.0;
        for (const MazeLayout& maze : suite.tasks) {
            int agreed = 0, compared = 0;
            for (bool has_key : {false, true}) {
                RewardMapResult map = reward_map(agent, maze, has_key);
                agreed += map.agreed;
                compared += map.compared;
            }
            maze_sum += static_cast<double>(agreed) / compared;
        }
        per_seed.push_back(maze_sum / suite.num_tasks());
        seed_list += (seed ? " " : "") + fmt(per_seed.back(), "%.3f");
    }
    double m = mean(per_seed);
    report(3, m >= 0.70, "mean agreement " + fmt(m) + " over seeds [" + seed_list + "]");
}

void criterion4(const TrainConfig& base, const SeedRuns& r) {
    std::vector<double> var_full, var_uniform;
    for (uint64_t seed = 0; seed < kSeeds; ++seed) {
        var_full.push_back(variance(r.cenra_tasks[seed]));
        TrainConfig cfg = base;
        cfg.seed = seed;
        cfg.weight_mode = WeightMode::uniform;
        progress("criterion 4: seed " + std::to_string(seed) + " uniform-weight run");
        Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::cenra);
        tr.run();
        var_uniform.push_back(variance(tr.evaluate(seed).task_returns));
    }
    double vf = mean(var_full), vu = mean(var_uniform);
    report(4, vf < vu,
           "cross-task return variance: full weights " + fmt(vf, "%.2e") + " < no weights " +
               fmt(vu, "%.2e"));
}

void criterion7(const TrainConfig& base, const SeedRuns& r, const fs::path& work) {
    progress("criterion 7: determinism re-run of seed 0");
    TrainConfig cfg = base;
    cfg.seed = 0;
    Trainer tr(TaskSuite::load(cfg.layouts), cfg, RunKind::cenra);
    tr.run();
    std::string csv = tr.metrics().to_csv();
    tr.metrics().write_csv(work / "c7_rerun_metrics.csv");
    bool pass = !csv.empty() && csv == r.seed0_csv;
    report(7, pass,
           pass ? "metrics byte-identical across identical re-runs"
                : "metrics differ between identical re-runs");
}

}  // namespace

int main(int argc, char** argv) {
    fs::path data, work;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--data") data = argv[i + 1];
        else if (flag == "--work") work = argv[i + 1];
    }
    if (data.empty() || work.empty()) {
        std::fprintf(stderr, "usage: cenra_acceptance --data <dir> --work <dir>\n");
        return 64;
    }
    try {
        fs::create_directories(work);
        criterion5();
        criterion6();
        TrainConfig base = TrainConfig::load(data / "suite4.cfg");
        SeedRuns runs = run_criterion1(base, work);
        criterion1(runs);
        criterion2(base, work);
        criterion3(base, work);
        criterion4(base, runs);
        criterion7(base, runs, work);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
        return 99;
    }
    return g_failures;
}
