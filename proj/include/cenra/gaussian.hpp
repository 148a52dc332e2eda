#pragma once

namespace cenra {

// Closed interval the knowledge reward lives in.
struct RewardSpace {
    double r_min = -1.0;
    double r_max = 1.0;
    void validate() const;
    double center() const { return 0.5 * (r_min + r_max); }
    double half_range() const { return 0.5 * (r_max - r_min); }
};

// Hard clamp on the raw log-std output keeps the policy from collapsing to a
// delta or exploding; gradients through a clamped value are zero.
constexpr double kLogStdMin = -5.0;
constexpr double kLogStdMax = 2.0;

struct GaussianHead {
    double mean = 0.0;
    double log_std = 0.0;  // already clamped
};

GaussianHead make_head(double mean_raw, double log_std_raw);

// log(1 - tanh(u)^2), computed without catastrophic cancellation at large |u|.
double log1m_tanh2(double u);

struct SquashedSample {
    double value = 0.0;     // in [r_min, r_max]
    double log_prob = 0.0;  // density of `value` under the squashed Gaussian
    double pre_tanh = 0.0;  // mean + std * noise, kept for diagnostics
};

// Reparameterized draw: value = center + half * tanh(mean + std * noise).
SquashedSample squashed_sample(const GaussianHead& h, const RewardSpace& space, double noise);

// Deterministic output used when the consumer wants the distribution's center
// of mass direction rather than a draw: tanh of the mean, scaled to the space.
double squashed_mean(const GaussianHead& h, const RewardSpace& space);

// Density of an arbitrary value in the open interval (diagnostics, tests).
double squashed_log_prob(const GaussianHead& h, const RewardSpace& space, double value);

// d log_prob / d mean and d log_prob / d log_std of a reparameterized sample,
// holding the noise fixed. Valid when log_std came through unclamped.
struct HeadGrad {
    double d_mean = 0.0;
    double d_log_std = 0.0;
};
HeadGrad squashed_logprob_grad(const GaussianHead& h, double noise);

}  // namespace cenra
