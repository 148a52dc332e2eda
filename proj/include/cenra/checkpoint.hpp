#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cenra/net.hpp"

namespace cenra {

// One network inside a checkpoint: a name ("actor", "q", ...), its
// architecture, and the flat parameters.
struct NetEntry {
    std::string name;
    NetSpec spec;
    std::vector<double> params;
};

// Binary container: ASCII line "cenra-ckpt v1", then a section count and the
// sections. Little-endian integers, 8-byte IEEE doubles.
void save_checkpoint(const std::filesystem::path& file, const std::vector<NetEntry>& nets);
std::vector<NetEntry> load_checkpoint(const std::filesystem::path& file);

// Pull one named section; IoError if absent.
const NetEntry& find_net(const std::vector<NetEntry>& nets, const std::string& name);

}  // namespace cenra
