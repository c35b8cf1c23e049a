#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "woundsev/backbones.hpp"
#include "woundsev/nn.hpp"

namespace woundsev::model {

enum class ModelFamily { Single, Stacked2, MultiZoom4 };

const std::string& to_string(ModelFamily f);
ModelFamily family_from_string(const std::string& s);

/// Architecture description. `head` lists the hidden dense widths; the
/// softmax output layer (width = num_classes) is always appended on top.
/// Per the studied designs the head depth is fixed at 4 for Stacked2 and 5
/// for MultiZoom4; Single heads are free-form (default one 256-wide layer).
struct ModelSpec {
    ModelFamily family = ModelFamily::Single;
    std::vector<std::string> backbones;
    int num_classes = 3;
    std::vector<int> head;
    bool freeze_base = true;

    bool operator==(const ModelSpec&) const = default;
};

/// Fills in the conventional head for the family: {256} for Single, a
/// geometric taper {1024,512,256,128} for Stacked2 and {2048,1024,512,256,128}
/// for MultiZoom4.
std::vector<int> default_head(ModelFamily family);

/// Validates arity, duplicates, head depth and class count.
/// Throws UnknownBackbone / DuplicateBackbone / ConfigError.
void validate_spec(const ModelSpec& spec);

struct Branch {
    BackboneInfo info;
    nn::Sequential net;
};

/// A built model: one feature-extractor branch per backbone plus the joint
/// dense head. Construction is single-threaded; a built handle supports
/// concurrent read-only inference (predict); training takes exclusive access.
class ModelHandle {
public:
    ModelSpec spec;
    std::vector<Branch> branches;
    nn::Sequential head;

    /// Number of raster views a forward pass consumes (1, or 4 for MultiZoom4).
    int view_count() const {
        return spec.family == ModelFamily::MultiZoom4 ? 4 : 1;
    }

    /// Total width of the concatenated branch features.
    int concat_width() const;

    /// Hidden dense layers in the head (excludes the softmax output layer).
    size_t head_dense_count() const;

    std::vector<nn::Param*> trainable_params();
    std::vector<nn::Param*> frozen_params();
    std::vector<nn::Param*> all_params();
    std::vector<const nn::Param*> all_params() const;

    /// Ids of every trainable parameter; when freeze_base is set no backbone
    /// parameter appears here.
    std::vector<std::string> trainable_manifest() const;
};

/// Builders. `init_seed` seeds the head initialization (fanned out from the
/// experiment seed); backbone weights are owned by the registry.
ModelHandle build_model(const ModelSpec& spec, uint64_t init_seed = 0,
                        WeightsPolicy policy = WeightsPolicy::Auto);
ModelHandle build_single(const std::string& backbone, int num_classes,
                         std::vector<int> head = {}, uint64_t init_seed = 0);
ModelHandle build_stacked2(const std::string& a, const std::string& b,
                           int num_classes, uint64_t init_seed = 0);
ModelHandle build_multizoom4(const std::string& b0, const std::string& b1,
                             const std::string& b2, const std::string& b3,
                             int num_classes, uint64_t init_seed = 0);

/// Scales an 8-bit BGR raster into a [0,1] double tensor.
nn::Tensor to_input_tensor(const cv::Mat& raster);

/// Full forward pass: each view is resized to its branch's native input size,
/// branch features are concatenated and the head's logits pass through
/// softmax. Returns a probability vector of length num_classes summing to
/// 1 (within 1e-6). Throws ArityMismatch when the number of views is wrong
/// and ShapeMismatch on unusable rasters. Deterministic and thread-safe.
nn::Tensor predict(const ModelHandle& handle, const std::vector<cv::Mat>& views);

/// Model artifact directory: spec.json (the ModelSpec) plus params.bin (every
/// parameter keyed by id). Loading rebuilds from the spec and requires the
/// blob to cover it exactly (ArtifactSpecMismatch otherwise).
void save_model(const ModelHandle& handle, const std::filesystem::path& dir);
ModelHandle load_model(const std::filesystem::path& dir);

}  // namespace woundsev::model
