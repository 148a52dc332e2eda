#include "cenra/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "cenra/errors.hpp"

namespace cenra {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2*pi)
}

void RewardSpace::validate() const {
    if (!(r_min < r_max)) throw ConfigError("reward space needs r_min < r_max");
    if (!std::isfinite(r_min) || !std::isfinite(r_max))
        throw ConfigError("reward space bounds must be finite");
}

GaussianHead make_head(double mean_raw, double log_std_raw) {
    return {mean_raw, std::clamp(log_std_raw, kLogStdMin, kLogStdMax)};
}

double log1m_tanh2(double u) {
    // 1 - tanh(u)^2 = sech(u)^2; in log space this is
    // 2*(ln 2 - |u| - log1p(exp(-2|u|))), stable for any magnitude of u.
    double a = std::fabs(u);
    return 2.0 * (M_LN2 - a - std::log1p(std::exp(-2.0 * a)));
}

SquashedSample squashed_sample(const GaussianHead& h, const RewardSpace& space, double noise) {
    double std = std::exp(h.log_std);
    double u = h.mean + std * noise;
    SquashedSample s;
    s.pre_tanh = u;
    s.value = space.center() + space.half_range() * std::tanh(u);
    // Base Gaussian density of u, minus the log-Jacobian of value(u).
    s.log_prob = -0.5 * noise * noise - h.log_std - kHalfLog2Pi - log1m_tanh2(u) -
                 std::log(space.half_range());
    return s;
}

double squashed_mean(const GaussianHead& h, const RewardSpace& space) {
    return space.center() + space.half_range() * std::tanh(h.mean);
}

double squashed_log_prob(const GaussianHead& h, const RewardSpace& space, double value) {
    double t = (value - space.center()) / space.half_range();
    // Keep atanh off its poles; values at the exact boundary get the density
    // of a point just inside.
    constexpr double kEdge = 1.0 - 1e-12;
    t = std::clamp(t, -kEdge, kEdge);
    double u = std::atanh(t);
    double std = std::exp(h.log_std);
    double noise = (u - h.mean) / std;
    return -0.5 * noise * noise - h.log_std - kHalfLog2Pi - log1m_tanh2(u) -
           std::log(space.half_range());
}

HeadGrad squashed_logprob_grad(const GaussianHead& h, double noise) {
    double std = std::exp(h.log_std);
    double th = std::tanh(h.mean + std * noise);
    HeadGrad g;
    g.d_mean = 2.0 * th;
    g.d_log_std = -1.0 + 2.0 * th * std * noise;
    return g;
}

}  // namespace cenra
