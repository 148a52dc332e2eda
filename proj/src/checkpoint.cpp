#include "cenra/checkpoint.hpp"

#include <cstdint>
#include <fstream>

#include "cenra/errors.hpp"

namespace cenra {

namespace {

constexpr char kHeader[] = "cenra-ckpt v1\n";

static_assert(sizeof(double) == 8, "checkpoint format assumes 8-byte doubles");

template <typename T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& in, const std::string& file) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw IoError("checkpoint truncated: " + file);
    return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& file, const std::vector<NetEntry>& nets) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint: " + file.string());
    out.write(kHeader, sizeof(kHeader) - 1);
    put<uint32_t>(out, static_cast<uint32_t>(nets.size()));
    for (const NetEntry& n : nets) {
        n.spec.validate();
        if (n.params.size() != ParamLayout::of(n.spec).total)
            throw UsageError("checkpoint section '" + n.name + "': parameter count mismatch");
        put<uint32_t>(out, static_cast<uint32_t>(n.name.size()));
        out.write(n.name.data(), static_cast<std::streamsize>(n.name.size()));
        put<int32_t>(out, n.spec.input_dim);
        put<uint32_t>(out, static_cast<uint32_t>(n.spec.hidden.size()));
        for (int h : n.spec.hidden) put<int32_t>(out, h);
        put<int32_t>(out, n.spec.output_dim);
        put<uint8_t>(out, n.spec.activation == Activation::relu ? 0 : 1);
        put<uint64_t>(out, n.params.size());
        out.write(reinterpret_cast<const char*>(n.params.data()),
                  static_cast<std::streamsize>(n.params.size() * sizeof(double)));
    }
    if (!out) throw IoError("write failed on checkpoint: " + file.string());
}

std::vector<NetEntry> load_checkpoint(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + file.string());
    char header[sizeof(kHeader) - 1];
    if (!in.read(header, sizeof(header)) ||
        std::string_view(header, sizeof(header)) != std::string_view(kHeader, sizeof(header)))
        throw IoError("not a recognized checkpoint (bad header): " + file.string());
    auto count = get<uint32_t>(in, file.string());
    std::vector<NetEntry> nets;
    nets.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        NetEntry n;
        auto name_len = get<uint32_t>(in, file.string());
        if (name_len > 4096) throw IoError("checkpoint section name too long: " + file.string());
        n.name.resize(name_len);
        if (!in.read(n.name.data(), name_len)) throw IoError("checkpoint truncated: " + file.string());
        n.spec.input_dim = get<int32_t>(in, file.string());
        auto n_hidden = get<uint32_t>(in, file.string());
        if (n_hidden > 1024) throw IoError("checkpoint layer count implausible: " + file.string());
        for (uint32_t h = 0; h < n_hidden; ++h)
            n.spec.hidden.push_back(get<int32_t>(in, file.string()));
        n.spec.output_dim = get<int32_t>(in, file.string());
        n.spec.activation = get<uint8_t>(in, file.string()) == 0 ? Activation::relu : Activation::tanh;
        n.spec.validate();
        auto n_params = get<uint64_t>(in, file.string());
        if (n_params != ParamLayout::of(n.spec).total)
            throw IoError("checkpoint section '" + n.name + "' parameter count does not match its architecture: " +
                          file.string());
        n.params.resize(n_params);
        if (!in.read(reinterpret_cast<char*>(n.params.data()),
                     static_cast<std::streamsize>(n_params * sizeof(double))))
            throw IoError("checkpoint truncated: " + file.string());
        nets.push_back(std::move(n));
    }
    return nets;
}

const NetEntry& find_net(const std::vector<NetEntry>& nets, const std::string& name) {
    for (const NetEntry& n : nets)
        if (n.name == name) return n;
    throw IoError("checkpoint has no section named '" + name + "'");
}

}  // namespace cenra
