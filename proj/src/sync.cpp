#include "cenra/sync.hpp"

#include <algorithm>
#include <cmath>

#include "cenra/errors.hpp"

namespace cenra {

SyncState::SyncState(int num_tasks, int window, int feature_dim)
    : window_(window), feature_dim_(feature_dim) {
    if (num_tasks < 1) throw ConfigError("sync state needs at least one task");
    if (window < 1) throw ConfigError("sync window must be positive");
    if (feature_dim < 1) throw ConfigError("sync feature dim must be positive");
    features_.resize(num_tasks);
    rewards_.resize(num_tasks);
    for (auto& w : features_) w.data.assign(static_cast<size_t>(window) * feature_dim, 0.0);
    for (auto& w : rewards_) w.data.assign(window, 0.0);
}

void SyncState::push_feature(int task, std::span<const double> f) {
    if (task < 0 || task >= num_tasks()) throw UsageError("sync push: unknown task id");
    if (static_cast<int>(f.size()) != feature_dim_)
        throw UsageError("sync push: feature dim mismatch");
    Window& w = features_[task];
    std::copy(f.begin(), f.end(), w.data.begin() + w.next * feature_dim_);
    w.next = (w.next + 1) % window_;
    w.count = std::min<size_t>(w.count + 1, window_);
}

void SyncState::push_reward(int task, double r_env) {
    if (task < 0 || task >= num_tasks()) throw UsageError("sync push: unknown task id");
    Window& w = rewards_[task];
    w.data[w.next] = r_env;
    w.next = (w.next + 1) % window_;
    w.count = std::min<size_t>(w.count + 1, window_);
}

bool SyncState::ready() const {
    for (int i = 0; i < num_tasks(); ++i)
        if (features_[i].count == 0 || rewards_[i].count == 0) return false;
    return true;
}

std::vector<std::vector<double>> SyncState::feature_means() const {
    if (!ready()) throw UsageError("sync: feature windows not all populated yet");
    std::vector<std::vector<double>> out;
    out.reserve(features_.size());
    for (const Window& w : features_) {
        std::vector<double> mean(feature_dim_, 0.0);
        for (size_t r = 0; r < w.count; ++r)
            for (int j = 0; j < feature_dim_; ++j) mean[j] += w.data[r * feature_dim_ + j];
        for (double& v : mean) v /= static_cast<double>(w.count);
        out.push_back(std::move(mean));
    }
    return out;
}

std::vector<double> SyncState::reward_tails() const {
    if (!ready()) throw UsageError("sync: reward windows not all populated yet");
    std::vector<double> out;
    out.reserve(rewards_.size());
    for (const Window& w : rewards_) {
        double sum = 0.0;
        for (size_t r = 0; r < w.count; ++r) sum += w.data[r];
        out.push_back(sum / static_cast<double>(w.count));
    }
    return out;
}

std::vector<double> stable_softmax(std::span<const double> logits) {
    if (logits.empty()) throw UsageError("softmax of nothing");
    double mx = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

SamplingWeights similarity_weights(const std::vector<std::vector<double>>& means,
                                   double floor_eps) {
    if (means.empty()) throw UsageError("similarity weights need at least one task");
    size_t d = means[0].size();
    for (const auto& m : means)
        if (m.size() != d) throw UsageError("similarity weights: feature dims differ");
    std::vector<double> centroid(d, 0.0);
    for (const auto& m : means)
        for (size_t j = 0; j < d; ++j) centroid[j] += m[j];
    for (double& v : centroid) v /= static_cast<double>(means.size());

    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<double> logits(means.size());
    for (size_t i = 0; i < means.size(); ++i) {
        double dot = 0.0;
        for (size_t j = 0; j < d; ++j) dot += centroid[j] * means[i][j];
        double s = std::max(dot * scale, floor_eps);
        logits[i] = 1.0 / s;
    }
    SamplingWeights w;
    w.w = stable_softmax(logits);
    return w;
}

SamplingWeights performance_weights(const std::vector<double>& tails, double floor_eps) {
    if (tails.empty()) throw UsageError("performance weights need at least one task");
    std::vector<double> logits(tails.size());
    for (size_t i = 0; i < tails.size(); ++i) logits[i] = 1.0 / std::max(tails[i], floor_eps);
    SamplingWeights w;
    w.w = stable_softmax(logits);
    return w;
}

SamplingWeights combine_weights(const SamplingWeights& sim, const SamplingWeights& per,
                                double alpha) {
    sim.validate();
    per.validate();
    if (sim.w.size() != per.w.size()) throw UsageError("combine weights: task counts differ");
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("weight mixing alpha must be in [0, 1]");
    SamplingWeights out;
    out.w.resize(sim.w.size());
    for (size_t i = 0; i < sim.w.size(); ++i)
        out.w[i] = alpha * sim.w[i] + (1.0 - alpha) * per.w[i];
    return out;
}

}  // namespace cenra
