#include "woundsev/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace woundsev {

std::string to_string(const BoundingBox& box) {
    return "[" + std::to_string(box.x_min) + "," + std::to_string(box.y_min) +
           "," + std::to_string(box.x_max) + "," + std::to_string(box.y_max) +
           "]";
}

BoundingBox pad_box(const BoundingBox& box, int padding, int image_width,
                    int image_height) {
    assert(padding >= 0);
    BoundingBox out;
    out.x_min = std::max(0, box.x_min - padding);
    out.y_min = std::max(0, box.y_min - padding);
    out.x_max = std::min(image_width, box.x_max + padding);
    out.y_max = std::min(image_height, box.y_max + padding);
    return out;
}

}  // namespace woundsev
