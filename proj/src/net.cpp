#include "cenra/net.hpp"

#include <cmath>
#include <cstring>

#include "cenra/errors.hpp"

namespace cenra {

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "tanh") return Activation::tanh;
    throw ConfigError("unknown activation: " + s);
}

std::string to_string(Activation a) { return a == Activation::relu ? "relu" : "tanh"; }

void NetSpec::validate() const {
    if (input_dim < 1) throw ConfigError("net input_dim must be positive");
    if (output_dim < 1) throw ConfigError("net output_dim must be positive");
    for (int h : hidden)
        if (h < 1) throw ConfigError("net hidden widths must be positive");
}

ParamLayout ParamLayout::of(const NetSpec& spec) {
    spec.validate();
    std::vector<int> dims;
    dims.push_back(spec.input_dim);
    dims.insert(dims.end(), spec.hidden.begin(), spec.hidden.end());
    dims.push_back(spec.output_dim);
    ParamLayout layout;
    size_t off = 0;
    for (size_t l = 0; l + 1 < dims.size(); ++l) {
        LayerSlice s;
        s.in = dims[l];
        s.out = dims[l + 1];
        s.w_off = off;
        off += static_cast<size_t>(s.in) * s.out;
        s.b_off = off;
        off += s.out;
        layout.layers.push_back(s);
    }
    layout.total = off;
    return layout;
}

Mlp::Mlp(NetSpec spec) : spec_(std::move(spec)), layout_(ParamLayout::of(spec_)) {
    dims_.push_back(spec_.input_dim);
    dims_.insert(dims_.end(), spec_.hidden.begin(), spec_.hidden.end());
    dims_.push_back(spec_.output_dim);
    size_t off = 0;
    for (int d : dims_) {
        act_offsets_.push_back(off);
        off += static_cast<size_t>(d);
    }
    act_stride_ = off;
}

std::vector<double> Mlp::init_params(Rng& rng) const {
    std::vector<double> p(layout_.total);
    for (const LayerSlice& l : layout_.layers) {
        double bound = 1.0 / std::sqrt(static_cast<double>(l.in));
        for (size_t i = 0; i < static_cast<size_t>(l.in) * l.out; ++i)
            p[l.w_off + i] = (2.0 * uniform_real(rng) - 1.0) * bound;
        for (int i = 0; i < l.out; ++i) p[l.b_off + i] = (2.0 * uniform_real(rng) - 1.0) * bound;
    }
    return p;
}

// Y[b][j] = bias[j] + sum_k X[b][k] * W[k][j]. The k-inner/j-vector order
// lets the compiler vectorize the j loop over contiguous memory.
static void affine_forward(const double* __restrict X, const double* __restrict W,
                           const double* __restrict b, double* __restrict Y, int B, int IN,
                           int OUT) {
    for (int i = 0; i < B; ++i) {
        double* __restrict y = Y + static_cast<size_t>(i) * OUT;
        std::memcpy(y, b, sizeof(double) * OUT);
        const double* __restrict x = X + static_cast<size_t>(i) * IN;
        for (int k = 0; k < IN; ++k) {
            double xv = x[k];
            const double* __restrict w = W + static_cast<size_t>(k) * OUT;
            for (int j = 0; j < OUT; ++j) y[j] += xv * w[j];
        }
    }
}

void Mlp::forward(std::span<const double> params, std::span<const double> inputs, int batch,
                  Workspace& ws, std::span<double> outputs) const {
    if (params.size() != layout_.total) throw UsageError("forward: wrong parameter count");
    if (inputs.size() != static_cast<size_t>(batch) * spec_.input_dim)
        throw UsageError("forward: input size does not match batch");
    if (outputs.size() != static_cast<size_t>(batch) * spec_.output_dim)
        throw UsageError("forward: output size does not match batch");

    ws.batch = batch;
    ws.acts.resize(static_cast<size_t>(batch) * act_stride_);
    // Layer activations are stored per layer, batch-contiguous.
    auto layer_ptr = [&](size_t l) { return ws.acts.data() + static_cast<size_t>(batch) * act_offsets_[l]; };
    std::memcpy(layer_ptr(0), inputs.data(), inputs.size() * sizeof(double));

    size_t L = layout_.layers.size();
    for (size_t l = 0; l < L; ++l) {
        const LayerSlice& s = layout_.layers[l];
        double* out = layer_ptr(l + 1);
        affine_forward(layer_ptr(l), params.data() + s.w_off, params.data() + s.b_off, out, batch,
                       s.in, s.out);
        if (l + 1 < L) {
            size_t n = static_cast<size_t>(batch) * s.out;
            if (spec_.activation == Activation::relu) {
                for (size_t i = 0; i < n; ++i) out[i] = out[i] > 0.0 ? out[i] : 0.0;
            } else {
                for (size_t i = 0; i < n; ++i) out[i] = std::tanh(out[i]);
            }
        }
    }
    std::memcpy(outputs.data(), layer_ptr(L), outputs.size() * sizeof(double));
}

std::vector<double> Mlp::forward_one(std::span<const double> params,
                                     std::span<const double> input) const {
    Workspace ws;
    std::vector<double> out(spec_.output_dim);
    forward(params, input, 1, ws, out);
    return out;
}

void Mlp::backward(std::span<const double> params, const Workspace& ws,
                   std::span<const double> output_grad, std::span<double> param_grad,
                   std::span<double> input_grad) const {
    int batch = ws.batch;
    if (batch <= 0) throw UsageError("backward: workspace has no forward pass");
    if (params.size() != layout_.total || param_grad.size() != layout_.total)
        throw UsageError("backward: wrong parameter count");
    if (output_grad.size() != static_cast<size_t>(batch) * spec_.output_dim)
        throw UsageError("backward: output_grad size does not match batch");
    if (!input_grad.empty() && input_grad.size() != static_cast<size_t>(batch) * spec_.input_dim)
        throw UsageError("backward: input_grad size does not match batch");

    auto layer_ptr = [&](size_t l) {
        return ws.acts.data() + static_cast<size_t>(batch) * act_offsets_[l];
    };
    size_t L = layout_.layers.size();
    // delta = gradient w.r.t. the pre-activation of the current layer.
    std::vector<double> delta(output_grad.begin(), output_grad.end());
    std::vector<double> prev;
    for (size_t l = L; l-- > 0;) {
        const LayerSlice& s = layout_.layers[l];
        const double* X = layer_ptr(l);
        double* dW = param_grad.data() + s.w_off;
        double* db = param_grad.data() + s.b_off;
        for (int i = 0; i < batch; ++i) {
            const double* x = X + static_cast<size_t>(i) * s.in;
            const double* d = delta.data() + static_cast<size_t>(i) * s.out;
            for (int k = 0; k < s.in; ++k) {
                double xv = x[k];
                double* dwrow = dW + static_cast<size_t>(k) * s.out;
                for (int j = 0; j < s.out; ++j) dwrow[j] += xv * d[j];
            }
            for (int j = 0; j < s.out; ++j) db[j] += d[j];
        }
        bool need_dx = l > 0 || !input_grad.empty();
        if (!need_dx) break;
        prev.assign(static_cast<size_t>(batch) * s.in, 0.0);
        const double* W = params.data() + s.w_off;
        for (int i = 0; i < batch; ++i) {
            const double* d = delta.data() + static_cast<size_t>(i) * s.out;
            double* dx = prev.data() + static_cast<size_t>(i) * s.in;
            for (int k = 0; k < s.in; ++k) {
                const double* wrow = W + static_cast<size_t>(k) * s.out;
                double acc = 0.0;
                for (int j = 0; j < s.out; ++j) acc += wrow[j] * d[j];
                dx[k] = acc;
            }
        }
        if (l > 0) {
            // Pass through the hidden nonlinearity using its cached output.
            const double* post = layer_ptr(l);
            size_t n = static_cast<size_t>(batch) * s.in;
            if (spec_.activation == Activation::relu) {
                for (size_t i = 0; i < n; ++i) prev[i] = post[i] > 0.0 ? prev[i] : 0.0;
            } else {
                for (size_t i = 0; i < n; ++i) prev[i] *= 1.0 - post[i] * post[i];
            }
        }
        delta.swap(prev);
    }
    if (!input_grad.empty())
        std::memcpy(input_grad.data(), delta.data(), input_grad.size() * sizeof(double));
}

std::span<const double> Mlp::layer_output(const Workspace& ws, size_t layer) const {
    if (layer >= dims_.size()) throw UsageError("layer_output: no such layer");
    if (ws.batch <= 0) throw UsageError("layer_output: workspace has no forward pass");
    return std::span<const double>(ws.acts.data() + static_cast<size_t>(ws.batch) * act_offsets_[layer],
                                   static_cast<size_t>(ws.batch) * dims_[layer]);
}

void axpy(std::span<double> p, std::span<const double> q, double scale) {
    if (p.size() != q.size()) throw UsageError("axpy: size mismatch");
    for (size_t i = 0; i < p.size(); ++i) p[i] += scale * q[i];
}

void soft_update(std::span<double> target, std::span<const double> online, double tau) {
    if (target.size() != online.size()) throw UsageError("soft_update: size mismatch");
    for (size_t i = 0; i < target.size(); ++i)
        target[i] = (1.0 - tau) * target[i] + tau * online[i];
}

uint64_t param_checksum(std::span<const double> params) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : params) {
        uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace cenra
