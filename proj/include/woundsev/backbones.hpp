#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "woundsev/nn.hpp"

namespace woundsev::model {

enum class WeightsPolicy {
    Auto,                // pretrained blob if cached, else seeded random
    PretrainedRequired,  // throw WeightsUnavailable when no blob is cached
};

struct BackboneInfo {
    std::string name;
    int feature_width = 0;  // length of the pooled feature vector
    int input_size = 0;     // square input edge, conventional resolution
    bool paper_backbone = false;  // one of the nine studied architectures
};

/// Process-wide catalogue of feature extractors. The nine studied
/// architectures are always present; their pretrained parameters are an
/// external artifact fetched by name from the directory named by the
/// WOUNDSEV_WEIGHTS_DIR environment variable. When no blob is cached the
/// registry degrades to seeded random frozen weights and says so once on
/// stderr. Desk-scale work uses ToySmall (built in, 64-wide features on
/// 64x64 inputs) or additional toy providers registered by the caller.
class BackboneRegistry {
public:
    static BackboneRegistry& instance();

    std::vector<BackboneInfo> list() const;
    bool known(const std::string& name) const;
    const BackboneInfo& info(const std::string& name) const;

    /// Registers (or replaces) a toy provider. Weights derive from `seed`.
    void register_toy(const std::string& name, int feature_width,
                      int input_size, uint64_t seed);

    /// Builds the feature-extractor network for `name`; every parameter id is
    /// prefixed with `prefix` so branches of one model never collide.
    nn::Sequential instantiate(const std::string& name,
                               const std::string& prefix,
                               WeightsPolicy policy = WeightsPolicy::Auto) const;

private:
    BackboneRegistry();

    struct Entry {
        BackboneInfo info;
        uint64_t weight_seed = 0;
    };
    std::map<std::string, Entry> entries_;
    std::vector<std::string> order_;  // registration order, stable listing
    mutable std::vector<std::string> warned_;
};

}  // namespace woundsev::model
