#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "woundsev/dataset.hpp"

namespace woundsev {

/// Parameters for the synthetic desk-scale dataset. Wound boxes of each class
/// are filled from a distinct color distribution with additive noise, so a
/// color-sensitive model can separate the classes; the background mimics skin.
struct FixtureSpec {
    int green_count = 10;
    int yellow_count = 10;
    int red_count = 10;
    int width = 128;
    int height = 128;
    int min_boxes = 1;
    int max_boxes = 1;

    int total() const { return green_count + yellow_count + red_count; }
};

/// Writes `<out_dir>/images/*.png` plus `<out_dir>/manifest.csv` and returns
/// the records. Labels are emitted round-robin (green, yellow, red, ...) until
/// each class count is exhausted. Byte-identical output for a fixed
/// (spec, seed). Throws InvalidSpec on unusable parameters.
std::vector<ImageRecord> generate_fixture(const FixtureSpec& spec,
                                          uint64_t seed,
                                          const std::filesystem::path& out_dir);

}  // namespace woundsev
