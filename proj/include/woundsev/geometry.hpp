#pragma once

#include <string>

namespace woundsev {

/// Axis-aligned wound bounding box in source-image pixel coordinates.
/// Well-formed means 0 <= x_min < x_max and 0 <= y_min < y_max; validity
/// against a raster additionally requires x_max <= width, y_max <= height.
struct BoundingBox {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;

    int width() const { return x_max - x_min; }
    int height() const { return y_max - y_min; }

    bool well_formed() const {
        return x_min >= 0 && y_min >= 0 && x_min < x_max && y_min < y_max;
    }

    bool valid_for(int image_width, int image_height) const {
        return well_formed() && x_max <= image_width && y_max <= image_height;
    }

    bool contains(const BoundingBox& other) const {
        return x_min <= other.x_min && y_min <= other.y_min &&
               x_max >= other.x_max && y_max >= other.y_max;
    }

    bool operator==(const BoundingBox&) const = default;
};

std::string to_string(const BoundingBox& box);

/// Extends every side of `box` outward by `padding` pixels, then clamps the
/// result to [0, image_width] x [0, image_height]. Total on any box valid for
/// the given dims; the output always contains the input.
BoundingBox pad_box(const BoundingBox& box, int padding, int image_width,
                    int image_height);

}  // namespace woundsev
