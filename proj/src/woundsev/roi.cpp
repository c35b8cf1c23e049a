#include "woundsev/roi.hpp"

#include <filesystem>

#include "woundsev/errors.hpp"

namespace woundsev {

int padding_of(ZoomChannel c) {
    static constexpr int paddings[4] = {0, 50, 100, 150};
    return paddings[static_cast<int>(c)];
}

const std::string& to_string(ZoomChannel c) {
    static const std::string names[4] = {"z0", "z1", "z2", "z3"};
    return names[static_cast<int>(c)];
}

ZoomChannel channel_from_string(const std::string& s) {
    for (ZoomChannel c : kAllChannels) {
        if (s == to_string(c)) return c;
    }
    throw ConfigError("unknown zoom channel '" + s + "' (expected z0..z3)");
}

std::string RoiSample::key() const {
    return source_id + "_" + std::to_string(box_index) + "_" +
           to_string(transform);
}

RasterLoader file_raster_loader(const std::string& base_dir) {
    return [base_dir](const ImageRecord& rec) {
        const std::filesystem::path p =
            std::filesystem::path(base_dir) / rec.path;
        cv::Mat img = load_raster(p.string());
        for (const auto& box : rec.boxes) {
            if (!box.valid_for(img.cols, img.rows)) {
                throw InvalidBox("record " + rec.image_id + ": box " +
                                 to_string(box) + " exceeds raster " +
                                 std::to_string(img.cols) + "x" +
                                 std::to_string(img.rows));
            }
        }
        return img;
    };
}

std::vector<RoiSample> prepare_channel(const std::vector<ImageRecord>& records,
                                       ZoomChannel channel,
                                       const RasterLoader& load) {
    const int pad = padding_of(channel);
    std::vector<RoiSample> samples;
    for (const auto& rec : records) {
        const cv::Mat image = load(rec);
        std::vector<BoundingBox> boxes = rec.boxes;
        if (boxes.empty()) {
            // ROI-level record: the raster itself is the region.
            boxes.push_back(BoundingBox{0, 0, image.cols, image.rows});
        }
        for (size_t i = 0; i < boxes.size(); ++i) {
            RoiSample s;
            s.source_id = rec.image_id;
            s.group_id = rec.group_id.empty() ? rec.image_id : rec.group_id;
            s.box_index = static_cast<int>(i);
            s.channel = channel;
            s.transform = TransformTag::Identity;
            s.label = rec.label;
            s.raster = crop(image, pad_box(boxes[i], pad, image.cols, image.rows));
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

std::vector<RoiSample> augment_set(const std::vector<RoiSample>& samples,
                                   FillPolicy fill) {
    for (const auto& s : samples) {
        if (s.transform != TransformTag::Identity) {
            throw AlreadyAugmented("augment_set: sample " + s.key() +
                                   " is already transformed");
        }
    }
    std::vector<RoiSample> out;
    out.reserve(samples.size() * kAllTransforms.size());
    for (const auto& s : samples) {
        for (TransformTag tag : kAllTransforms) {
            RoiSample t = s;
            t.transform = tag;
            t.raster = apply_transform(s.raster, tag, fill);
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace woundsev
