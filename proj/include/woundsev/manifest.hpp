#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "woundsev/dataset.hpp"

namespace woundsev {

/// Manifest text format, one record per line:
///
///   image_id, path, label[, boxes[, group_id]]
///
/// where boxes is a ';'-separated list of [x_min,y_min,x_max,y_max] and label
/// is green / yellow / red. An empty boxes field marks a pre-cropped ROI-level
/// row. '#' starts a comment; blank lines are skipped.
///
/// Errors: MalformedManifest (syntax), InvalidBox (x_min >= x_max etc.),
/// UnknownLabel, DuplicateId. All carry the offending line number.
std::vector<ImageRecord> parse_manifest(const std::string& text);

std::vector<ImageRecord> parse_manifest_file(const std::filesystem::path& file);

/// Inverse of parse_manifest: parse(serialize(records)) == records for all
/// valid record lists.
std::string serialize_manifest(const std::vector<ImageRecord>& records);

void write_manifest(const std::vector<ImageRecord>& records,
                    const std::filesystem::path& file);

}  // namespace woundsev
