#include "woundsev/raster.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "woundsev/errors.hpp"

namespace woundsev {

const std::string& to_string(TransformTag t) {
    static const std::string names[6] = {"identity", "hflip", "vflip",
                                         "rot25",    "rot45", "rot90"};
    return names[static_cast<int>(t)];
}

TransformTag transform_from_string(const std::string& s) {
    for (TransformTag t : kAllTransforms) {
        if (s == to_string(t)) return t;
    }
    throw DataError("unknown transform tag '" + s + "'");
}

cv::Mat crop(const cv::Mat& image, const BoundingBox& box) {
    if (!box.valid_for(image.cols, image.rows)) {
        throw BoxOutOfRange("box " + to_string(box) + " does not fit a " +
                            std::to_string(image.cols) + "x" +
                            std::to_string(image.rows) + " raster");
    }
    cv::Rect roi(box.x_min, box.y_min, box.width(), box.height());
    return image(roi).clone();
}

namespace {

cv::Mat rotate_about_center(const cv::Mat& in, double degrees,
                            FillPolicy fill) {
    const cv::Point2f center(in.cols / 2.0f, in.rows / 2.0f);
    const cv::Mat rot = cv::getRotationMatrix2D(center, degrees, 1.0);
    const int border = fill == FillPolicy::Reflect ? cv::BORDER_REFLECT
                                                   : cv::BORDER_CONSTANT;
    cv::Mat out;
    cv::warpAffine(in, out, rot, in.size(), cv::INTER_LINEAR, border,
                   cv::Scalar(0, 0, 0));
    return out;
}

}  // namespace

cv::Mat apply_transform(const cv::Mat& raster, TransformTag tag,
                        FillPolicy fill) {
    if (raster.empty()) throw ShapeMismatch("apply_transform: empty raster");
    cv::Mat out;
    switch (tag) {
        case TransformTag::Identity:
            return raster.clone();
        case TransformTag::HFlip:
            cv::flip(raster, out, 1);
            return out;
        case TransformTag::VFlip:
            cv::flip(raster, out, 0);
            return out;
        case TransformTag::Rot25:
            return rotate_about_center(raster, 25.0, fill);
        case TransformTag::Rot45:
            return rotate_about_center(raster, 45.0, fill);
        case TransformTag::Rot90:
            // counter-clockwise quarter turn, pixel-exact, dims swap
            cv::rotate(raster, out, cv::ROTATE_90_COUNTERCLOCKWISE);
            return out;
    }
    throw PipelineError("unreachable transform tag");
}

cv::Mat resize_for_backbone(const cv::Mat& raster, int target_width,
                            int target_height) {
    if (target_width <= 0 || target_height <= 0) {
        throw ShapeMismatch("resize_for_backbone: target dims must be positive");
    }
    if (raster.cols == target_width && raster.rows == target_height) {
        return raster.clone();
    }
    cv::Mat out;
    cv::resize(raster, out, cv::Size(target_width, target_height), 0, 0,
               cv::INTER_LINEAR);
    return out;
}

cv::Mat load_raster(const std::string& path) {
    cv::Mat img = cv::imread(path, cv::IMREAD_COLOR);
    if (img.empty()) {
        throw DataError("cannot read raster " + path);
    }
    return img;
}

void save_raster(const cv::Mat& raster, const std::string& path) {
    if (!cv::imwrite(path, raster)) {
        throw PipelineError("cannot write raster " + path);
    }
}

}  // namespace woundsev
