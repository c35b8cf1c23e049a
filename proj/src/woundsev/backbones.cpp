#include "woundsev/backbones.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>

#include "woundsev/errors.hpp"
#include "woundsev/params_io.hpp"

namespace woundsev::model {

namespace {

constexpr uint64_t kWeightStreamBase = 0x5eedfacade15c0deULL;

struct PaperBackbone {
    const char* name;
    int feature_width;
    int input_size;
};

// Feature widths and input resolutions follow each architecture's
// conventional pretraining configuration.
constexpr PaperBackbone kPaperBackbones[] = {
    {"VGG16", 512, 224},
    {"VGG19", 512, 224},
    {"InceptionV3", 2048, 299},
    {"NasNetLarge", 4032, 331},
    {"ResNet50", 2048, 224},
    {"DenseNet201", 1920, 224},
    {"Xception", 2048, 299},
    {"MobileNetV2", 1280, 224},
    {"InceptionResNetV2", 1536, 299},
};

}  // namespace

BackboneRegistry& BackboneRegistry::instance() {
    static BackboneRegistry registry;
    return registry;
}

BackboneRegistry::BackboneRegistry() {
    for (const auto& b : kPaperBackbones) {
        Entry e;
        e.info = BackboneInfo{b.name, b.feature_width, b.input_size, true};
        e.weight_seed = derive_seed(kWeightStreamBase, b.name);
        entries_[b.name] = e;
        order_.push_back(b.name);
    }
    Entry toy;
    toy.info = BackboneInfo{"ToySmall", 64, 64, false};
    toy.weight_seed = derive_seed(kWeightStreamBase, "ToySmall");
    entries_["ToySmall"] = toy;
    order_.push_back("ToySmall");
}

std::vector<BackboneInfo> BackboneRegistry::list() const {
    std::vector<BackboneInfo> out;
    out.reserve(order_.size());
    for (const auto& name : order_) out.push_back(entries_.at(name).info);
    return out;
}

bool BackboneRegistry::known(const std::string& name) const {
    return entries_.count(name) > 0;
}

const BackboneInfo& BackboneRegistry::info(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
        throw UnknownBackbone("backbone '" + name + "' is not registered");
    }
    return it->second.info;
}

void BackboneRegistry::register_toy(const std::string& name, int feature_width,
                                    int input_size, uint64_t seed) {
    if (feature_width < 1 || input_size < 16) {
        throw InvalidSpec("toy backbone needs feature_width >= 1 and input >= 16");
    }
    Entry e;
    e.info = BackboneInfo{name, feature_width, input_size, false};
    e.weight_seed = derive_seed(seed, name);
    if (!entries_.count(name)) order_.push_back(name);
    entries_[name] = e;
}

nn::Sequential BackboneRegistry::instantiate(const std::string& name,
                                             const std::string& prefix,
                                             WeightsPolicy policy) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
        throw UnknownBackbone("backbone '" + name + "' is not registered");
    }
    const Entry& entry = it->second;
    Rng rng(entry.weight_seed);

    // A compact strided conv stack ending in a pooled feature vector of the
    // advertised width. Toy providers run at full stride-2 resolution; the
    // nine full-size architectures use stride 4 on the first two stages so a
    // forward pass stays cheap at their native input resolutions.
    const bool big = entry.info.paper_backbone;
    const int s1 = big ? 4 : 2;
    const int s2 = big ? 4 : 2;
    nn::Sequential net;
    net.add(std::make_unique<nn::Conv2d>(prefix + name + "/conv1", 3, 8, 3, s1,
                                         1, &rng));
    net.add(std::make_unique<nn::Relu>(prefix + name + "/relu1"));
    net.add(std::make_unique<nn::Conv2d>(prefix + name + "/conv2", 8, 16, 3, s2,
                                         1, &rng));
    net.add(std::make_unique<nn::Relu>(prefix + name + "/relu2"));
    net.add(std::make_unique<nn::Conv2d>(prefix + name + "/conv3", 16, 32, 3, 2,
                                         1, &rng));
    net.add(std::make_unique<nn::Relu>(prefix + name + "/relu3"));
    net.add(std::make_unique<nn::GlobalAvgPool>(prefix + name + "/gap"));
    net.add(std::make_unique<nn::Dense>(prefix + name + "/embed", 32,
                                        entry.info.feature_width, &rng));
    net.add(std::make_unique<nn::Relu>(prefix + name + "/relu4"));

    if (entry.info.paper_backbone) {
        std::filesystem::path blob;
        if (const char* dir = std::getenv("WOUNDSEV_WEIGHTS_DIR")) {
            blob = std::filesystem::path(dir) / (name + ".params");
        }
        if (!blob.empty() && std::filesystem::exists(blob)) {
            load_params(blob, net, prefix);
        } else if (policy == WeightsPolicy::PretrainedRequired) {
            throw WeightsUnavailable(
                "no pretrained weights cached for backbone '" + name +
                "' (set WOUNDSEV_WEIGHTS_DIR)");
        } else if (std::find(warned_.begin(), warned_.end(), name) ==
                   warned_.end()) {
            warned_.push_back(name);
            std::cerr << "[woundsev] note: no pretrained weights cached for "
                      << name << "; using seeded random frozen weights\n";
        }
    }
    return net;
}

}  // namespace woundsev::model
