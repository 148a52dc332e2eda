#include "cenra/replay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cenra/errors.hpp"

namespace cenra {

void SamplingWeights::validate() const {
    if (w.empty()) throw UsageError("sampling weights are empty");
    double sum = 0.0;
    for (double v : w) {
        if (!std::isfinite(v) || v < 0.0)
            throw UsageError("sampling weights must be finite and non-negative");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw UsageError("sampling weights sum to " + std::to_string(sum) + ", expected 1");
}

SamplingWeights SamplingWeights::uniform(int n) {
    if (n < 1) throw UsageError("uniform weights need at least one task");
    SamplingWeights s;
    s.w.assign(n, 1.0 / n);
    return s;
}

std::vector<int> allocate(const SamplingWeights& weights, int batch) {
    weights.validate();
    if (batch < 0) throw UsageError("allocate: negative batch");
    int n = static_cast<int>(weights.w.size());
    std::vector<int> counts(n);
    std::vector<double> frac(n);
    int assigned = 0;
    for (int i = 0; i < n; ++i) {
        double exact = weights.w[i] * batch;
        counts[i] = static_cast<int>(std::floor(exact));
        frac[i] = exact - counts[i];
        assigned += counts[i];
    }
    // Hand out the leftover slots by descending fractional part; the stable
    // sort plus index tie-break makes the result order-independent of the
    // platform's sort internals.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (frac[a] != frac[b]) return frac[a] > frac[b];
        return a < b;
    });
    for (int k = 0; assigned < batch; ++k) {
        ++counts[order[k % n]];
        ++assigned;
    }
    return counts;
}

ReplayBuffer::ReplayBuffer(int num_tasks, size_t capacity_per_task, RewardSpace knw_space)
    : capacity_(capacity_per_task), knw_space_(knw_space) {
    if (num_tasks < 1) throw ConfigError("replay buffer needs at least one task");
    if (capacity_ < 1) throw ConfigError("replay buffer capacity must be positive");
    knw_space_.validate();
    rings_.resize(num_tasks);
}

void ReplayBuffer::push(const Transition& t) {
    if (t.task_id < 0 || t.task_id >= num_tasks())
        throw UsageError("replay push: unknown task id " + std::to_string(t.task_id));
    if (t.r_env != 0.0 && t.r_env != 1.0)
        throw UsageError("replay push: environment reward must be 0 or 1, got " +
                         std::to_string(t.r_env));
    if (t.r_knw_stored < knw_space_.r_min || t.r_knw_stored > knw_space_.r_max ||
        !std::isfinite(t.r_knw_stored))
        throw UsageError("replay push: shaping reward outside its bounds");
    if (t.action < 0 || t.action >= kNumActions || t.next_action < 0 ||
        t.next_action >= kNumActions)
        throw UsageError("replay push: action out of range");
    Ring& r = rings_[t.task_id];
    if (r.data.size() < capacity_) {
        r.data.push_back(t);
    } else {
        r.data[r.head] = t;
        r.head = (r.head + 1) % capacity_;
        r.full = true;
    }
}

size_t ReplayBuffer::size(int task) const {
    if (task < 0 || task >= num_tasks()) throw UsageError("replay size: unknown task id");
    return rings_[task].data.size();
}

size_t ReplayBuffer::total_size() const {
    size_t n = 0;
    for (const Ring& r : rings_) n += r.data.size();
    return n;
}

const Transition& ReplayBuffer::ring_at(const Ring& r, size_t i) const {
    return r.full ? r.data[(r.head + i) % r.data.size()] : r.data[i];
}

const Transition& ReplayBuffer::at(int task, size_t i) const {
    if (task < 0 || task >= num_tasks()) throw UsageError("replay at: unknown task id");
    if (i >= rings_[task].data.size()) throw UsageError("replay at: index past end");
    return ring_at(rings_[task], i);
}

std::optional<std::vector<Transition>> ReplayBuffer::sample_task(int task, int batch,
                                                                 Rng& rng) const {
    if (task < 0 || task >= num_tasks()) throw UsageError("replay sample: unknown task id");
    if (batch < 1) throw UsageError("replay sample: batch must be positive");
    const Ring& r = rings_[task];
    if (r.data.size() < static_cast<size_t>(batch)) return std::nullopt;
    std::vector<Transition> out;
    out.reserve(batch);
    for (int i = 0; i < batch; ++i)
        out.push_back(r.data[uniform_int(rng, r.data.size())]);
    return out;
}

std::vector<Transition> ReplayBuffer::sample_cra(const SamplingWeights& weights, int batch,
                                                 Rng& rng) const {
    weights.validate();
    if (static_cast<int>(weights.w.size()) != num_tasks())
        throw UsageError("replay sample: weight count != task count");
    if (batch < 1) throw UsageError("replay sample: batch must be positive");

    // Empty rings cannot honor their quota; fold their mass into the rest.
    SamplingWeights effective = weights;
    double live_mass = 0.0;
    for (int i = 0; i < num_tasks(); ++i) {
        if (rings_[i].data.empty()) effective.w[i] = 0.0;
        live_mass += effective.w[i];
    }
    if (live_mass <= 0.0) {
        bool any = false;
        for (const Ring& r : rings_) any = any || !r.data.empty();
        if (!any) return {};
        // All weight sat on empty tasks; fall back to uniform over live ones.
        for (int i = 0; i < num_tasks(); ++i)
            effective.w[i] = rings_[i].data.empty() ? 0.0 : 1.0;
        live_mass = std::accumulate(effective.w.begin(), effective.w.end(), 0.0);
    }
    for (double& v : effective.w) v /= live_mass;

    std::vector<int> counts = allocate(effective, batch);
    std::vector<Transition> out;
    out.reserve(batch);
    for (int i = 0; i < num_tasks(); ++i) {
        const Ring& r = rings_[i];
        for (int k = 0; k < counts[i]; ++k)
            out.push_back(r.data[uniform_int(rng, r.data.size())]);
    }
    return out;
}

}  // namespace cenra
