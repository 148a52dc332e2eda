#include "cenra/adam.hpp"

#include <cmath>
#include <string>

#include "cenra/errors.hpp"

namespace cenra {

void Adam::step(std::span<double> params, std::span<const double> grad, double lr) {
    if (params.size() != m.size() || grad.size() != m.size())
        throw UsageError("adam: parameter/gradient size mismatch");
    for (size_t i = 0; i < grad.size(); ++i)
        if (!std::isfinite(grad[i]))
            throw NumericError("adam: non-finite gradient at index " + std::to_string(i));
    ++t;
    double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (size_t i = 0; i < params.size(); ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
        params[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
}

}  // namespace cenra
