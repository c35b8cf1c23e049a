#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "woundsev/nn.hpp"

namespace woundsev::model {

using ParamBlob = std::map<std::string, std::vector<double>>;

/// Binary parameter container: little-endian doubles keyed by parameter id.
ParamBlob read_params_file(const std::filesystem::path& file);
void write_params_file(const std::filesystem::path& file, const ParamBlob& blob);

/// Stores a network's parameters with `strip_prefix` removed from each id, so
/// a blob written from one branch can be loaded into another instance of the
/// same architecture regardless of its prefix.
void save_params(const std::filesystem::path& file, const nn::Sequential& net,
                 const std::string& strip_prefix);

/// Loads a blob saved by save_params into `net`. Every parameter of the net
/// must be covered with matching sizes (ArtifactSpecMismatch otherwise).
void load_params(const std::filesystem::path& file, nn::Sequential& net,
                 const std::string& strip_prefix);

}  // namespace woundsev::model
