#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cenra {

// Adam with bias correction; epsilon sits outside the square root:
//   p -= lr * m_hat / (sqrt(v_hat) + eps)
struct Adam {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    uint64_t t = 0;
    std::vector<double> m, v;

    explicit Adam(size_t n) : m(n, 0.0), v(n, 0.0) {}

    // Throws NumericError naming the first offending index if any gradient
    // entry is NaN or infinite.
    void step(std::span<double> params, std::span<const double> grad, double lr);
};

}  // namespace cenra
