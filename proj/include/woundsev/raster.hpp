#pragma once

#include <array>
#include <string>

#include <opencv2/core.hpp>

#include "woundsev/geometry.hpp"

namespace woundsev {

/// The six deterministic training-set transforms. Augmenting a sample set
/// multiplies its size by exactly six, one output per tag.
enum class TransformTag { Identity, HFlip, VFlip, Rot25, Rot45, Rot90 };

inline constexpr std::array<TransformTag, 6> kAllTransforms = {
    TransformTag::Identity, TransformTag::HFlip,  TransformTag::VFlip,
    TransformTag::Rot25,    TransformTag::Rot45,  TransformTag::Rot90};

const std::string& to_string(TransformTag t);
TransformTag transform_from_string(const std::string& s);

/// Fill for the canvas corners vacated by the 25 and 45 degree rotations.
/// Reflect is the default: a constant-black fill would inject wedges whose
/// prevalence correlates with augmentation, not with the wound.
enum class FillPolicy { Reflect, ConstantBlack };

/// Copies the sub-raster under `box`. Output dims are box.width x box.height.
/// Throws BoxOutOfRange when the box does not fit the raster.
cv::Mat crop(const cv::Mat& image, const BoundingBox& box);

/// Identity returns the input unchanged. Flips are pixel-exact involutions.
/// Rot90 swaps dimensions (four applications are the identity). Rot25/Rot45
/// rotate about the center on the original canvas with bilinear sampling and
/// the given fill policy.
cv::Mat apply_transform(const cv::Mat& raster, TransformTag tag,
                        FillPolicy fill = FillPolicy::Reflect);

/// Bilinear resize to exactly target_width x target_height (stretch; aspect
/// ratio is not preserved).
cv::Mat resize_for_backbone(const cv::Mat& raster, int target_width,
                            int target_height);

cv::Mat load_raster(const std::string& path);
void save_raster(const cv::Mat& raster, const std::string& path);

}  // namespace woundsev
