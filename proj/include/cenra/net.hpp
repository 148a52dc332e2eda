#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cenra/rng.hpp"

namespace cenra {

enum class Activation { relu, tanh };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

// Architecture of a fully connected network. Hidden layers use `activation`;
// the output layer is linear.
struct NetSpec {
    int input_dim = 0;
    std::vector<int> hidden;
    int output_dim = 0;
    Activation activation = Activation::relu;

    void validate() const;
    bool operator==(const NetSpec&) const = default;
};

// Where each layer's weights and biases live inside the flat parameter
// vector. Order per layer: weight matrix (row-major, [in][out]) then bias.
struct LayerSlice {
    size_t w_off = 0;
    size_t b_off = 0;
    int in = 0;
    int out = 0;
};

struct ParamLayout {
    std::vector<LayerSlice> layers;
    size_t total = 0;
    static ParamLayout of(const NetSpec& spec);
};

// Stateless MLP: all parameters travel in explicit flat vectors, so the same
// net object can serve online params, target params, or finite-difference
// probes without copies of anything but the numbers.
class Mlp {
  public:
    explicit Mlp(NetSpec spec);

    const NetSpec& spec() const { return spec_; }
    const ParamLayout& layout() const { return layout_; }
    size_t param_count() const { return layout_.total; }

    // Uniform in +-1/sqrt(fan_in), biases included.
    std::vector<double> init_params(Rng& rng) const;

    // Scratch for one forward pass; backward reads the cached activations.
    struct Workspace {
        std::vector<double> acts;  // input copy + every layer's post-activation
        int batch = 0;
    };

    // inputs is batch*input_dim row-major; outputs batch*output_dim.
    void forward(std::span<const double> params, std::span<const double> inputs, int batch,
                 Workspace& ws, std::span<double> outputs) const;

    // Convenience single-sample forward without retaining a workspace.
    std::vector<double> forward_one(std::span<const double> params,
                                    std::span<const double> input) const;

    // output_grad is d(loss)/d(outputs) for the batch that filled `ws`.
    // Accumulates into param_grad (caller zeroes it); optionally fills
    // input_grad (batch*input_dim) when non-empty.
    void backward(std::span<const double> params, const Workspace& ws,
                  std::span<const double> output_grad, std::span<double> param_grad,
                  std::span<double> input_grad = {}) const;

    // Activations of one layer from the last forward pass through `ws`.
    // Layer 0 is the input copy; layer hidden.size() is the penultimate
    // (last hidden) output; hidden.size()+1 is the final linear output.
    std::span<const double> layer_output(const Workspace& ws, size_t layer) const;

  private:
    NetSpec spec_;
    ParamLayout layout_;
    std::vector<int> dims_;           // input, hidden..., output
    std::vector<size_t> act_offsets_; // per-sample offset of each layer inside ws.acts
    size_t act_stride_ = 0;           // per-sample total activation length
};

// In-place p += scale * q, used for target-network soft updates.
void axpy(std::span<double> p, std::span<const double> q, double scale);

// Polyak averaging: target = (1 - tau) * target + tau * online.
void soft_update(std::span<double> target, std::span<const double> online, double tau);

// FNV-1a over the raw bytes; used to assert frozen parameters stay frozen.
uint64_t param_checksum(std::span<const double> params);

}  // namespace cenra
