#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "woundsev/dataset.hpp"
#include "woundsev/raster.hpp"

namespace woundsev {

/// Peri-wound zoom-out channels. The padding applied to the original ROI is
/// fixed: Z0 = 0, Z1 = 50, Z2 = 100, Z3 = 150 pixels per side, measured in
/// source-image pixels and clamped at the image border.
enum class ZoomChannel { Z0 = 0, Z1 = 1, Z2 = 2, Z3 = 3 };

inline constexpr std::array<ZoomChannel, 4> kAllChannels = {
    ZoomChannel::Z0, ZoomChannel::Z1, ZoomChannel::Z2, ZoomChannel::Z3};

int padding_of(ZoomChannel c);
const std::string& to_string(ZoomChannel c);
ZoomChannel channel_from_string(const std::string& s);

/// One model-ready sample: a cropped (and possibly transformed) raster with
/// full provenance back to its source record and box.
struct RoiSample {
    std::string source_id;
    std::string group_id;
    int box_index = 0;
    ZoomChannel channel = ZoomChannel::Z0;
    TransformTag transform = TransformTag::Identity;
    cv::Mat raster;
    SeverityClass label = SeverityClass::Green;

    /// Stable identity of the sample within its channel and split.
    std::string key() const;
};

/// Loads a record's raster from disk, resolving `record.path` against
/// `base_dir`, and validates every box against the raster dims.
using RasterLoader = std::function<cv::Mat(const ImageRecord&)>;
RasterLoader file_raster_loader(const std::string& base_dir);

/// Expands records into one identity-transform sample per (record, box) pair,
/// cropping each box padded by the channel's zoom-out amount. ROI-level
/// records (no boxes) contribute the whole raster as their single region, so
/// zoom-outs degenerate to Z0 for them (there is no surrounding context to
/// reveal).
std::vector<RoiSample> prepare_channel(const std::vector<ImageRecord>& records,
                                       ZoomChannel channel,
                                       const RasterLoader& load);

/// The x6 augmentation: every input sample (which must still be untransformed,
/// AlreadyAugmented otherwise) yields one sample per TransformTag. Labels,
/// channels and provenance are preserved; output size is exactly 6x input.
std::vector<RoiSample> augment_set(const std::vector<RoiSample>& samples,
                                   FillPolicy fill = FillPolicy::Reflect);

}  // namespace woundsev
