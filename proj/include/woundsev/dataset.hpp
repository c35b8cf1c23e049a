#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "woundsev/geometry.hpp"
#include "woundsev/severity.hpp"

namespace woundsev {

/// One source photo and its gold annotation. Two flavours share the type:
///  - image-level rows carry one or more wound boxes over the referenced
///    raster;
///  - ROI-level rows (pre-cropped by an external localizer) carry no boxes;
///    the raster itself is the region of interest.
struct ImageRecord {
    std::string image_id;
    std::string path;  // raster reference, relative to the manifest location
    SeverityClass label = SeverityClass::Green;
    std::vector<BoundingBox> boxes;  // empty => ROI-level row
    std::string group_id;            // defaults to image_id

    bool roi_level() const { return boxes.empty(); }

    /// Number of model-ready regions this record expands to.
    size_t roi_units() const { return boxes.empty() ? 1 : boxes.size(); }

    bool operator==(const ImageRecord&) const = default;
};

/// Counts records per class. Always reports all three classes (zero counts
/// included). Throws EmptyDataset on empty input.
std::map<SeverityClass, size_t> class_counts(
    const std::vector<ImageRecord>& records);

size_t total_roi_units(const std::vector<ImageRecord>& records);

/// Keeps only records whose label is in `keep`, preserving order.
/// Throws EmptyResult if nothing matches.
std::vector<ImageRecord> filter_classes(const std::vector<ImageRecord>& records,
                                        const std::set<SeverityClass>& keep);

/// Group-wise two-way partition. Sizes are measured in ROI units so that the
/// achieved ratio tracks the units actually fed to training.
struct DatasetSplit {
    std::vector<ImageRecord> train_val;
    std::vector<ImageRecord> test;
    double ratio = 0.8;
    uint64_t seed = 0;
    std::map<std::string, std::string> group_assignment;  // group -> partition

    size_t train_val_units() const { return total_roi_units(train_val); }
    size_t test_units() const { return total_roi_units(test); }
};

/// Partitions records so that no group_id straddles the two sides and the
/// train_val fraction of ROI units is as close to `ratio` as any group-wise
/// split can be (within one group's size). Deterministic per seed; both sides
/// are always non-empty. Requires 0 < ratio < 1 and at least two distinct
/// groups (TooFewGroups otherwise).
DatasetSplit split_by_group(const std::vector<ImageRecord>& records,
                            double ratio, uint64_t seed);

}  // namespace woundsev
