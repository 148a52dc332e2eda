#include "cenra/reward_agent.hpp"

#include <cmath>
#include <cstring>

#include "cenra/errors.hpp"

namespace cenra {

void RewardAgentConfig::validate() const {
    space.validate();
    if (lr_actor <= 0.0 || lr_critic <= 0.0)
        throw ConfigError("reward agent learning rates must be positive");
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("reward agent gamma must be in (0, 1]");
    if (tau <= 0.0 || tau > 1.0) throw ConfigError("reward agent tau must be in (0, 1]");
    if (actor_update_every < 1) throw ConfigError("actor_update_every must be >= 1");
    if (!std::isfinite(optimism) || std::abs(optimism) > 10.0)
        throw ConfigError("reward agent optimism must be finite and within [-10, 10]");
    for (int h : hidden)
        if (h < 1) throw ConfigError("reward agent hidden widths must be positive");
}

static NetSpec actor_spec(int input_dim, const RewardAgentConfig& cfg) {
    return NetSpec{input_dim, cfg.hidden, 2, cfg.activation};
}
static NetSpec critic_spec(int input_dim, const RewardAgentConfig& cfg) {
    return NetSpec{input_dim, cfg.hidden, 1, cfg.activation};
}

RewardAgent::RewardAgent(int obs_dim, int num_actions, RewardAgentConfig cfg, Rng& init_rng)
    : obs_dim_(obs_dim),
      num_actions_(num_actions),
      cfg_(std::move(cfg)),
      actor_net_(actor_spec(obs_dim + num_actions, cfg_)),
      critic_net_(critic_spec(obs_dim + num_actions, cfg_)),
      actor_opt_(actor_net_.param_count()),
      critic_opt_(critic_net_.param_count()) {
    cfg_.validate();
    if (obs_dim_ < 1 || num_actions_ < 1)
        throw ConfigError("reward agent needs positive observation and action dims");
    actor_params_ = actor_net_.init_params(init_rng);
    critic_params_ = critic_net_.init_params(init_rng);
    target_critic_params_ = critic_params_;
    // Mean head is output 0 of the final layer; see the config field.
    actor_params_[actor_net_.layout().layers.back().b_off] += cfg_.optimism;
}

RewardAgent::RewardAgent(int obs_dim, int num_actions, RewardAgentConfig cfg,
                         const std::vector<NetEntry>& nets)
    : obs_dim_(obs_dim),
      num_actions_(num_actions),
      cfg_(std::move(cfg)),
      actor_net_(find_net(nets, "actor").spec),
      critic_net_(find_net(nets, "critic").spec),
      actor_opt_(actor_net_.param_count()),
      critic_opt_(critic_net_.param_count()) {
    cfg_.validate();
    actor_params_ = find_net(nets, "actor").params;
    critic_params_ = find_net(nets, "critic").params;
    target_critic_params_ = find_net(nets, "critic_target").params;
    if (critic_net_.spec() != find_net(nets, "critic_target").spec)
        throw IoError("reward agent checkpoint: critic and critic_target architectures differ");
    check_dims();
}

void RewardAgent::check_dims() const {
    if (actor_net_.spec().input_dim != input_dim() || actor_net_.spec().output_dim != 2)
        throw IoError("reward agent checkpoint: actor shape does not fit this task suite");
    if (critic_net_.spec().input_dim != input_dim() || critic_net_.spec().output_dim != 1)
        throw IoError("reward agent checkpoint: critic shape does not fit this task suite");
}

void RewardAgent::build_input(std::span<const double> obs, int action,
                              std::span<double> out) const {
    if (static_cast<int>(obs.size()) != obs_dim_)
        throw UsageError("reward agent: observation dim mismatch");
    if (action < 0 || action >= num_actions_)
        throw UsageError("reward agent: action out of range");
    if (static_cast<int>(out.size()) != input_dim())
        throw UsageError("reward agent: output span has wrong size");
    std::memcpy(out.data(), obs.data(), obs.size() * sizeof(double));
    std::fill(out.begin() + obs_dim_, out.end(), 0.0);
    out[obs_dim_ + action] = 1.0;
}

// Batched (state, action) inputs for the whole batch, current pairs or next.
std::vector<double> RewardAgent::batch_inputs(std::span<const Transition> batch,
                                              bool next) const {
    size_t d = static_cast<size_t>(input_dim());
    std::vector<double> x(batch.size() * d);
    for (size_t i = 0; i < batch.size(); ++i) {
        const Transition& t = batch[i];
        build_input(next ? t.next_obs.features : t.obs.features, next ? t.next_action : t.action,
                    std::span<double>(x).subspan(i * d, d));
    }
    return x;
}

GaussianHead RewardAgent::head_at(std::span<const double> obs, int action) const {
    std::vector<double> in(input_dim());
    build_input(obs, action, in);
    std::vector<double> raw = actor_net_.forward_one(actor_params_, in);
    return make_head(raw[0], raw[1]);
}

double RewardAgent::reward_sample(std::span<const double> obs, int action, Rng& rng) const {
    return squashed_sample(head_at(obs, action), cfg_.space, normal(rng)).value;
}

double RewardAgent::reward_mean(std::span<const double> obs, int action) const {
    return squashed_mean(head_at(obs, action), cfg_.space);
}

std::vector<double> RewardAgent::reward_mean_batch(std::span<const Transition> batch) const {
    int n = static_cast<int>(batch.size());
    std::vector<double> inputs = batch_inputs(batch, false);
    Mlp::Workspace ws;
    std::vector<double> raw(static_cast<size_t>(n) * 2);
    actor_net_.forward(actor_params_, inputs, n, ws, raw);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = squashed_mean(make_head(raw[2 * i], raw[2 * i + 1]), cfg_.space);
    return out;
}

// Critic loss/gradient at explicit parameters. The TD target always comes
// from the current target network, so the loss is a pure function of
// `critic_params` for a fixed batch.
RewardAgent::CriticEval RewardAgent::eval_critic(std::span<const Transition> batch,
                                                 std::span<const double> critic_params,
                                                 bool want_grad) const {
    int n = static_cast<int>(batch.size());
    if (n == 0) throw UsageError("reward agent: empty batch");
    std::vector<double> x = batch_inputs(batch, false);
    std::vector<double> xn = batch_inputs(batch, true);

    Mlp::Workspace ws, ws_next;
    std::vector<double> v(n), vn(n);
    critic_net_.forward(critic_params, x, n, ws, v);
    critic_net_.forward(target_critic_params_, xn, n, ws_next, vn);

    CriticEval out;
    out.deltas.resize(n);
    std::vector<double> dv(n);
    for (int i = 0; i < n; ++i) {
        double mask = batch[i].done ? 0.0 : 1.0;
        out.deltas[i] = batch[i].r_env + cfg_.gamma * mask * vn[i] - v[i];
        out.loss += out.deltas[i] * out.deltas[i];
        dv[i] = -2.0 * out.deltas[i] / n;  // d(mean delta^2)/dV
    }
    out.loss /= n;
    if (want_grad) {
        out.grad.assign(critic_net_.param_count(), 0.0);
        critic_net_.backward(critic_params, ws, dv, out.grad);
    }
    return out;
}

std::pair<double, std::vector<double>> RewardAgent::critic_deltas(
    std::span<const Transition> batch) const {
    CriticEval e = eval_critic(batch, critic_params_, false);
    return {e.loss, std::move(e.deltas)};
}

double RewardAgent::critic_loss_at(std::span<const Transition> batch,
                                   std::span<const double> critic_params) const {
    return eval_critic(batch, critic_params, false).loss;
}

std::vector<double> RewardAgent::critic_grad_at(std::span<const Transition> batch,
                                                std::span<const double> critic_params) const {
    return eval_critic(batch, critic_params, true).grad;
}

// Actor loss/gradient at explicit parameters for fixed noise and deltas:
//   L = -mean_i log_prob(sample_i) * delta_i
// with sample_i reparameterized from noise_i, deltas held constant, and the
// log-std clamp zeroing that component's gradient where it binds.
RewardAgent::ActorEval RewardAgent::eval_actor(std::span<const Transition> batch,
                                               std::span<const double> deltas,
                                               std::span<const double> noise,
                                               std::span<const double> actor_params,
                                               bool want_grad) const {
    int n = static_cast<int>(batch.size());
    if (n == 0) throw UsageError("reward agent: empty batch");
    if (deltas.size() != batch.size() || noise.size() != batch.size())
        throw UsageError("reward agent: deltas/noise must align with the batch");
    std::vector<double> x = batch_inputs(batch, false);

    Mlp::Workspace ws;
    std::vector<double> raw(static_cast<size_t>(n) * 2);
    actor_net_.forward(actor_params, x, n, ws, raw);

    ActorEval out;
    std::vector<double> draw_grad(want_grad ? static_cast<size_t>(n) * 2 : 0);
    for (int i = 0; i < n; ++i) {
        GaussianHead h = make_head(raw[2 * i], raw[2 * i + 1]);
        SquashedSample s = squashed_sample(h, cfg_.space, noise[i]);
        out.loss -= s.log_prob * deltas[i];
        if (want_grad) {
            HeadGrad g = squashed_logprob_grad(h, noise[i]);
            draw_grad[2 * i] = -g.d_mean * deltas[i] / n;
            bool clamped = raw[2 * i + 1] < kLogStdMin || raw[2 * i + 1] > kLogStdMax;
            draw_grad[2 * i + 1] = clamped ? 0.0 : -g.d_log_std * deltas[i] / n;
        }
    }
    out.loss /= n;
    if (want_grad) {
        out.grad.assign(actor_net_.param_count(), 0.0);
        actor_net_.backward(actor_params, ws, draw_grad, out.grad);
    }
    return out;
}

double RewardAgent::actor_loss_at(std::span<const Transition> batch,
                                  std::span<const double> deltas, std::span<const double> noise,
                                  std::span<const double> actor_params) const {
    return eval_actor(batch, deltas, noise, actor_params, false).loss;
}

std::vector<double> RewardAgent::actor_grad_at(std::span<const Transition> batch,
                                               std::span<const double> deltas,
                                               std::span<const double> noise,
                                               std::span<const double> actor_params) const {
    return eval_actor(batch, deltas, noise, actor_params, true).grad;
}

RewardAgent::UpdateDiag RewardAgent::update(std::span<const Transition> batch, Rng& noise_rng) {
    CriticEval ce = eval_critic(batch, critic_params_, true);
    critic_opt_.step(critic_params_, ce.grad, cfg_.lr_critic);

    ++update_count_;
    UpdateDiag diag;
    diag.critic_loss = ce.loss;

    if (update_count_ % cfg_.actor_update_every == 0) {
        // Fresh reparameterized proposals scored by the (detached) deltas.
        std::vector<double> noise(batch.size());
        for (double& v : noise) v = normal(noise_rng);
        ActorEval ae = eval_actor(batch, ce.deltas, noise, actor_params_, true);
        actor_opt_.step(actor_params_, ae.grad, cfg_.lr_actor);
        diag.actor_loss = ae.loss;
        diag.actor_stepped = true;
    }

    soft_update(target_critic_params_, critic_params_, cfg_.tau);
    return diag;
}

std::vector<NetEntry> RewardAgent::to_entries() const {
    return {{"actor", actor_net_.spec(), actor_params_},
            {"critic", critic_net_.spec(), critic_params_},
            {"critic_target", critic_net_.spec(), target_critic_params_}};
}

uint64_t RewardAgent::checksum() const {
    uint64_t h = param_checksum(actor_params_);
    h ^= param_checksum(critic_params_) * 0x9e3779b97f4a7c15ULL;
    h ^= param_checksum(target_critic_params_) * 0xc2b2ae3d27d4eb4fULL;
    return h;
}

}  // namespace cenra
