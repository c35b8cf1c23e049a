#include "woundsev/fixture.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include <opencv2/core.hpp>

#include "woundsev/errors.hpp"
#include "woundsev/manifest.hpp"
#include "woundsev/raster.hpp"
#include "woundsev/rng.hpp"

namespace woundsev {

namespace {

// BGR class palettes, far apart so crops are color-separable.
constexpr std::array<int, 3> kClassColor[3] = {
    {70, 170, 60},   // green wounds
    {50, 200, 230},  // yellow wounds
    {40, 40, 200},   // red wounds
};
constexpr std::array<int, 3> kSkinColor = {140, 170, 210};
constexpr int kNoiseAmplitude = 18;

uint8_t noisy(int base, Rng& rng) {
    const int v = base + rng.int_in(-kNoiseAmplitude, kNoiseAmplitude);
    return static_cast<uint8_t>(std::clamp(v, 0, 255));
}

void fill_region(cv::Mat& img, const BoundingBox& box,
                 const std::array<int, 3>& color, Rng& rng) {
    for (int y = box.y_min; y < box.y_max; ++y) {
        auto* row = img.ptr<cv::Vec3b>(y);
        for (int x = box.x_min; x < box.x_max; ++x) {
            row[x] = cv::Vec3b(noisy(color[0], rng), noisy(color[1], rng),
                               noisy(color[2], rng));
        }
    }
}

void validate(const FixtureSpec& spec) {
    if (spec.green_count < 0 || spec.yellow_count < 0 || spec.red_count < 0 ||
        spec.total() < 1) {
        throw InvalidSpec("fixture: class counts must be non-negative, total >= 1");
    }
    if (spec.width < 16 || spec.height < 16) {
        throw InvalidSpec("fixture: raster dims must be at least 16x16");
    }
    if (spec.min_boxes < 1 || spec.min_boxes > spec.max_boxes) {
        throw InvalidSpec("fixture: need 1 <= min_boxes <= max_boxes");
    }
}

BoundingBox random_box(int width, int height, Rng& rng) {
    const int bw = rng.int_in(std::max(8, width / 6), std::max(9, width / 3));
    const int bh = rng.int_in(std::max(8, height / 6), std::max(9, height / 3));
    const int x = rng.int_in(0, width - bw);
    const int y = rng.int_in(0, height - bh);
    return BoundingBox{x, y, x + bw, y + bh};
}

}  // namespace

std::vector<ImageRecord> generate_fixture(const FixtureSpec& spec,
                                          uint64_t seed,
                                          const std::filesystem::path& out_dir) {
    validate(spec);
    std::filesystem::create_directories(out_dir / "images");

    Rng rng(derive_seed(seed, "fixture"));

    // Round-robin label sequence until every class count is exhausted.
    std::array<int, 3> remaining = {spec.green_count, spec.yellow_count,
                                    spec.red_count};
    std::vector<SeverityClass> labels;
    while (labels.size() < static_cast<size_t>(spec.total())) {
        for (int c = 0; c < 3; ++c) {
            if (remaining[c] > 0) {
                --remaining[c];
                labels.push_back(static_cast<SeverityClass>(c));
            }
        }
    }

    std::vector<ImageRecord> records;
    records.reserve(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "img%04zu", i);

        cv::Mat img(spec.height, spec.width, CV_8UC3);
        fill_region(img, BoundingBox{0, 0, spec.width, spec.height}, kSkinColor,
                    rng);

        ImageRecord rec;
        rec.image_id = id;
        rec.path = std::string("images/") + id + ".png";
        rec.label = labels[i];
        rec.group_id = rec.image_id;
        const int n_boxes = rng.int_in(spec.min_boxes, spec.max_boxes);
        for (int b = 0; b < n_boxes; ++b) {
            const BoundingBox box = random_box(spec.width, spec.height, rng);
            fill_region(img, box, kClassColor[static_cast<int>(labels[i])], rng);
            rec.boxes.push_back(box);
        }
        save_raster(img, (out_dir / rec.path).string());
        records.push_back(std::move(rec));
    }

    write_manifest(records, out_dir / "manifest.csv");
    return records;
}

}  // namespace woundsev
