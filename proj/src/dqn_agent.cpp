#include "cenra/dqn_agent.hpp"

#include <algorithm>
#include <cmath>

#include "cenra/errors.hpp"

namespace cenra {

double augmented_reward(double r_env, double r_knw, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw ConfigError("reward mixing factor must be in (0, 1]");
    return r_env + lambda * r_knw;
}

void DqnConfig::validate() const {
    if (lr <= 0.0) throw ConfigError("dqn lr must be positive");
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("dqn gamma must be in (0, 1]");
    if (tau <= 0.0 || tau > 1.0) throw ConfigError("dqn tau must be in (0, 1]");
    if (eps_start < 0.0 || eps_start > 1.0 || eps_end < 0.0 || eps_end > 1.0)
        throw ConfigError("epsilon bounds must be in [0, 1]");
    if (eps_decay_steps < 1) throw ConfigError("eps_decay_steps must be positive");
    for (int h : hidden)
        if (h < 1) throw ConfigError("dqn hidden widths must be positive");
}

DqnAgent::DqnAgent(int obs_dim, int num_actions, DqnConfig cfg, Rng& init_rng)
    : obs_dim_(obs_dim),
      num_actions_(num_actions),
      cfg_(std::move(cfg)),
      net_(NetSpec{obs_dim, cfg_.hidden, num_actions, cfg_.activation}),
      opt_(net_.param_count()) {
    cfg_.validate();
    params_ = net_.init_params(init_rng);
    target_params_ = params_;
}

DqnAgent::DqnAgent(int obs_dim, int num_actions, DqnConfig cfg, const std::vector<NetEntry>& nets)
    : obs_dim_(obs_dim),
      num_actions_(num_actions),
      cfg_(std::move(cfg)),
      net_(find_net(nets, "q").spec),
      opt_(net_.param_count()) {
    cfg_.validate();
    if (net_.spec().input_dim != obs_dim || net_.spec().output_dim != num_actions)
        throw IoError("dqn checkpoint: network shape does not fit this task");
    if (find_net(nets, "q_target").spec != net_.spec())
        throw IoError("dqn checkpoint: online and target architectures differ");
    params_ = find_net(nets, "q").params;
    target_params_ = find_net(nets, "q_target").params;
}

double DqnAgent::epsilon() const {
    double f = std::min(1.0, static_cast<double>(act_count_) / cfg_.eps_decay_steps);
    return cfg_.eps_start + (cfg_.eps_end - cfg_.eps_start) * f;
}

DqnAgent::ActResult DqnAgent::act(std::span<const double> obs, Rng& rng) {
    if (static_cast<int>(obs.size()) != obs_dim_) throw UsageError("dqn act: observation dim mismatch");
    double eps = epsilon();
    ++act_count_;

    Mlp::Workspace ws;
    std::vector<double> q(num_actions_);
    net_.forward(params_, obs, 1, ws, q);

    ActResult r;
    auto feat = net_.layer_output(ws, net_.spec().hidden.size());
    r.feature.assign(feat.begin(), feat.end());
    int greedy = static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
    if (uniform_real(rng) < eps) {
        r.action = static_cast<int>(uniform_int(rng, num_actions_));
        r.explored = true;
    } else {
        r.action = greedy;
    }
    return r;
}

std::vector<double> DqnAgent::q_values(std::span<const double> obs) const {
    if (static_cast<int>(obs.size()) != obs_dim_)
        throw UsageError("dqn q_values: observation dim mismatch");
    return net_.forward_one(params_, obs);
}

int DqnAgent::greedy_action(std::span<const double> obs) const {
    std::vector<double> q = q_values(obs);
    return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
}

DqnAgent::TdEval DqnAgent::eval_td(std::span<const Transition> batch,
                                   std::span<const double> r_knw, double lambda,
                                   std::span<const double> params, bool want_grad) const {
    int n = static_cast<int>(batch.size());
    if (n == 0) throw UsageError("dqn update: empty batch");
    if (!r_knw.empty() && r_knw.size() != batch.size())
        throw UsageError("dqn update: shaping rewards must align with the batch");

    size_t d = static_cast<size_t>(obs_dim_);
    std::vector<double> x(static_cast<size_t>(n) * d), xn(static_cast<size_t>(n) * d);
    for (int i = 0; i < n; ++i) {
        const auto& o = batch[i].obs.features;
        const auto& on = batch[i].next_obs.features;
        if (o.size() != d || on.size() != d)
            throw UsageError("dqn update: observation dim mismatch");
        std::copy(o.begin(), o.end(), x.begin() + i * d);
        std::copy(on.begin(), on.end(), xn.begin() + i * d);
    }

    Mlp::Workspace ws, ws_next;
    std::vector<double> q(static_cast<size_t>(n) * num_actions_);
    std::vector<double> qn(static_cast<size_t>(n) * num_actions_);
    net_.forward(params, x, n, ws, q);
    net_.forward(target_params_, xn, n, ws_next, qn);

    TdEval out;
    std::vector<double> dq(static_cast<size_t>(n) * num_actions_, 0.0);
    for (int i = 0; i < n; ++i) {
        if (batch[i].action < 0 || batch[i].action >= num_actions_)
            throw UsageError("dqn update: action out of range");
        double r_pol = batch[i].r_env;
        if (!r_knw.empty()) {
            r_pol = augmented_reward(batch[i].r_env, r_knw[i], lambda);
            out.mean_r_knw += r_knw[i];
        }
        const double* row = qn.data() + static_cast<size_t>(i) * num_actions_;
        double best_next = *std::max_element(row, row + num_actions_);
        double mask = batch[i].done ? 0.0 : 1.0;
        double target = r_pol + cfg_.gamma * mask * best_next;
        double pred = q[static_cast<size_t>(i) * num_actions_ + batch[i].action];
        double err = pred - target;
        out.loss += err * err;
        dq[static_cast<size_t>(i) * num_actions_ + batch[i].action] = 2.0 * err / n;
    }
    out.loss /= n;
    out.mean_r_knw /= n;
    if (want_grad) {
        out.grad.assign(net_.param_count(), 0.0);
        net_.backward(params, ws, dq, out.grad);
    }
    return out;
}

double DqnAgent::td_loss_at(std::span<const Transition> batch, std::span<const double> r_knw,
                            double lambda, std::span<const double> params) const {
    return eval_td(batch, r_knw, lambda, params, false).loss;
}

std::vector<double> DqnAgent::td_grad_at(std::span<const Transition> batch,
                                         std::span<const double> r_knw, double lambda,
                                         std::span<const double> params) const {
    return eval_td(batch, r_knw, lambda, params, true).grad;
}

DqnAgent::UpdateDiag DqnAgent::update(std::span<const Transition> batch,
                                      std::span<const double> r_knw, double lambda) {
    TdEval e = eval_td(batch, r_knw, lambda, params_, true);
    opt_.step(params_, e.grad, cfg_.lr);
    soft_update(target_params_, params_, cfg_.tau);
    return {e.loss, e.mean_r_knw};
}

std::vector<NetEntry> DqnAgent::to_entries() const {
    return {{"q", net_.spec(), params_}, {"q_target", net_.spec(), target_params_}};
}

}  // namespace cenra
