#include "woundsev/models.hpp"

#include <fstream>
#include <memory>
#include <set>

#include <nlohmann/json.hpp>

#include "woundsev/errors.hpp"
#include "woundsev/params_io.hpp"
#include "woundsev/raster.hpp"

namespace woundsev::model {

using nlohmann::json;

const std::string& to_string(ModelFamily f) {
    static const std::string names[3] = {"single", "stacked2", "multizoom4"};
    return names[static_cast<int>(f)];
}

ModelFamily family_from_string(const std::string& s) {
    for (ModelFamily f : {ModelFamily::Single, ModelFamily::Stacked2,
                          ModelFamily::MultiZoom4}) {
        if (s == to_string(f)) return f;
    }
    throw ConfigError("unknown model family '" + s + "'");
}

std::vector<int> default_head(ModelFamily family) {
    switch (family) {
        case ModelFamily::Single:
            return {256};
        case ModelFamily::Stacked2:
            return {1024, 512, 256, 128};
        case ModelFamily::MultiZoom4:
            return {2048, 1024, 512, 256, 128};
    }
    return {};
}

void validate_spec(const ModelSpec& spec) {
    const size_t arity = spec.family == ModelFamily::Single      ? 1
                         : spec.family == ModelFamily::Stacked2 ? 2
                                                                : 4;
    if (spec.backbones.size() != arity) {
        throw ConfigError("family " + to_string(spec.family) + " needs " +
                          std::to_string(arity) + " backbones, got " +
                          std::to_string(spec.backbones.size()));
    }
    auto& registry = BackboneRegistry::instance();
    std::set<std::string> seen;
    for (const auto& name : spec.backbones) {
        if (!registry.known(name)) {
            throw UnknownBackbone("backbone '" + name + "' is not registered");
        }
        if (!seen.insert(name).second) {
            // Layer names must stay unique inside one model, so one
            // architecture cannot appear on two branches.
            throw DuplicateBackbone("backbone '" + name +
                                    "' used on more than one branch");
        }
    }
    if (spec.num_classes != 2 && spec.num_classes != 3) {
        throw ConfigError("num_classes must be 2 or 3, got " +
                          std::to_string(spec.num_classes));
    }
    if (spec.family == ModelFamily::Stacked2 && spec.head.size() != 4) {
        throw ConfigError("stacked2 heads have exactly 4 dense layers, got " +
                          std::to_string(spec.head.size()));
    }
    if (spec.family == ModelFamily::MultiZoom4 && spec.head.size() != 5) {
        throw ConfigError("multizoom4 heads have exactly 5 dense layers, got " +
                          std::to_string(spec.head.size()));
    }
    for (int w : spec.head) {
        if (w < 1) throw ConfigError("head widths must be positive");
    }
}

int ModelHandle::concat_width() const {
    int w = 0;
    for (const auto& b : branches) w += b.info.feature_width;
    return w;
}

size_t ModelHandle::head_dense_count() const {
    return spec.head.size();
}

std::vector<nn::Param*> ModelHandle::trainable_params() {
    std::vector<nn::Param*> out = head.params();
    if (!spec.freeze_base) {
        for (auto& b : branches) {
            for (nn::Param* p : b.net.params()) out.push_back(p);
        }
    }
    return out;
}

std::vector<nn::Param*> ModelHandle::frozen_params() {
    std::vector<nn::Param*> out;
    if (spec.freeze_base) {
        for (auto& b : branches) {
            for (nn::Param* p : b.net.params()) out.push_back(p);
        }
    }
    return out;
}

std::vector<nn::Param*> ModelHandle::all_params() {
    std::vector<nn::Param*> out;
    for (auto& b : branches) {
        for (nn::Param* p : b.net.params()) out.push_back(p);
    }
    for (nn::Param* p : head.params()) out.push_back(p);
    return out;
}

std::vector<const nn::Param*> ModelHandle::all_params() const {
    std::vector<const nn::Param*> out;
    for (const auto& b : branches) {
        for (const nn::Param* p : b.net.params()) out.push_back(p);
    }
    for (const nn::Param* p : head.params()) out.push_back(p);
    return out;
}

std::vector<std::string> ModelHandle::trainable_manifest() const {
    std::vector<std::string> out;
    auto* self = const_cast<ModelHandle*>(this);
    for (const nn::Param* p : self->trainable_params()) out.push_back(p->id);
    return out;
}

ModelHandle build_model(const ModelSpec& spec, uint64_t init_seed,
                        WeightsPolicy policy) {
    validate_spec(spec);
    auto& registry = BackboneRegistry::instance();

    ModelHandle handle;
    handle.spec = spec;
    for (size_t i = 0; i < spec.backbones.size(); ++i) {
        const std::string prefix = "b" + std::to_string(i) + "/";
        Branch branch;
        branch.info = registry.info(spec.backbones[i]);
        branch.net = registry.instantiate(spec.backbones[i], prefix, policy);
        handle.branches.push_back(std::move(branch));
    }

    Rng rng(derive_seed(init_seed, "init"));
    int in_width = handle.concat_width();
    for (size_t i = 0; i < spec.head.size(); ++i) {
        const std::string id = "head/dense" + std::to_string(i);
        handle.head.add(std::make_unique<nn::Dense>(id, in_width, spec.head[i],
                                                    &rng));
        handle.head.add(std::make_unique<nn::Relu>(id + "/relu"));
        in_width = spec.head[i];
    }
    handle.head.add(std::make_unique<nn::Dense>("head/output", in_width,
                                                spec.num_classes, &rng));
    return handle;
}

ModelHandle build_single(const std::string& backbone, int num_classes,
                         std::vector<int> head, uint64_t init_seed) {
    ModelSpec spec;
    spec.family = ModelFamily::Single;
    spec.backbones = {backbone};
    spec.num_classes = num_classes;
    spec.head = head.empty() ? default_head(spec.family) : std::move(head);
    return build_model(spec, init_seed);
}

ModelHandle build_stacked2(const std::string& a, const std::string& b,
                           int num_classes, uint64_t init_seed) {
    ModelSpec spec;
    spec.family = ModelFamily::Stacked2;
    spec.backbones = {a, b};
    spec.num_classes = num_classes;
    spec.head = default_head(spec.family);
    return build_model(spec, init_seed);
}

ModelHandle build_multizoom4(const std::string& b0, const std::string& b1,
                             const std::string& b2, const std::string& b3,
                             int num_classes, uint64_t init_seed) {
    ModelSpec spec;
    spec.family = ModelFamily::MultiZoom4;
    spec.backbones = {b0, b1, b2, b3};
    spec.num_classes = num_classes;
    spec.head = default_head(spec.family);
    return build_model(spec, init_seed);
}

nn::Tensor to_input_tensor(const cv::Mat& raster) {
    if (raster.empty() || raster.type() != CV_8UC3) {
        throw ShapeMismatch("model input must be a non-empty 8-bit BGR raster");
    }
    nn::Tensor t(raster.rows, raster.cols, 3);
    for (int y = 0; y < raster.rows; ++y) {
        const auto* row = raster.ptr<cv::Vec3b>(y);
        for (int x = 0; x < raster.cols; ++x) {
            for (int ch = 0; ch < 3; ++ch) {
                t.at(y, x, ch) = row[x][ch] / 255.0;
            }
        }
    }
    return t;
}

nn::Tensor predict(const ModelHandle& handle, const std::vector<cv::Mat>& views) {
    if (views.size() != static_cast<size_t>(handle.view_count())) {
        throw ArityMismatch("model expects " +
                            std::to_string(handle.view_count()) +
                            " input view(s), got " +
                            std::to_string(views.size()));
    }
    std::vector<nn::Tensor> features;
    features.reserve(handle.branches.size());
    for (size_t i = 0; i < handle.branches.size(); ++i) {
        const Branch& branch = handle.branches[i];
        const cv::Mat& view = views[handle.view_count() == 1 ? 0 : i];
        if (view.empty()) throw ShapeMismatch("empty input raster");
        const cv::Mat resized = resize_for_backbone(view, branch.info.input_size,
                                                    branch.info.input_size);
        features.push_back(branch.net.infer(to_input_tensor(resized)));
    }
    const nn::Tensor logits = handle.head.infer(nn::concat_vec(features));
    return nn::softmax(logits);
}

void save_model(const ModelHandle& handle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    json spec_json = {
        {"family", to_string(handle.spec.family)},
        {"backbones", handle.spec.backbones},
        {"num_classes", handle.spec.num_classes},
        {"head", handle.spec.head},
        {"freeze_base", handle.spec.freeze_base},
    };
    std::ofstream out(dir / "spec.json");
    if (!out) throw PipelineError("cannot write " + (dir / "spec.json").string());
    out << spec_json.dump(2) << "\n";
    out.close();

    ParamBlob blob;
    for (const nn::Param* p : handle.all_params()) blob[p->id] = p->value;
    write_params_file(dir / "params.bin", blob);
}

ModelHandle load_model(const std::filesystem::path& dir) {
    std::ifstream in(dir / "spec.json");
    if (!in) {
        throw ArtifactSpecMismatch("missing model spec " +
                                   (dir / "spec.json").string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ArtifactSpecMismatch("unreadable model spec: " +
                                   std::string(e.what()));
    }
    ModelSpec spec;
    try {
        spec.family = family_from_string(j.at("family").get<std::string>());
        spec.backbones = j.at("backbones").get<std::vector<std::string>>();
        spec.num_classes = j.at("num_classes").get<int>();
        spec.head = j.at("head").get<std::vector<int>>();
        spec.freeze_base = j.at("freeze_base").get<bool>();
    } catch (const json::exception& e) {
        throw ArtifactSpecMismatch("model spec fields: " + std::string(e.what()));
    }

    ModelHandle handle = build_model(spec);
    const ParamBlob blob = read_params_file(dir / "params.bin");
    auto params = handle.all_params();
    if (blob.size() != params.size()) {
        throw ArtifactSpecMismatch(
            "parameter blob does not match the model spec: expected " +
            std::to_string(params.size()) + " entries, found " +
            std::to_string(blob.size()));
    }
    for (nn::Param* p : params) {
        auto it = blob.find(p->id);
        if (it == blob.end() || it->second.size() != p->value.size()) {
            throw ArtifactSpecMismatch("parameter '" + p->id +
                                       "' inconsistent with model spec");
        }
        p->value = it->second;
    }
    return handle;
}

}  // namespace woundsev::model
