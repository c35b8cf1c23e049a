#include "woundsev/experiment.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "woundsev/errors.hpp"
#include "woundsev/roi.hpp"

namespace woundsev::pipeline {

using nlohmann::json;

std::vector<SeverityClass> TaskConfig::classes() const {
    if (kind == TaskKind::Multiclass3) {
        return {SeverityClass::Green, SeverityClass::Yellow, SeverityClass::Red};
    }
    return {pair.first, pair.second};
}

std::vector<std::string> TaskConfig::class_names() const {
    std::vector<std::string> names;
    for (SeverityClass c : classes()) names.push_back(to_string(c));
    return names;
}

std::string TaskConfig::id() const {
    if (kind == TaskKind::Multiclass3) return "multiclass3";
    return "binary:" + to_string(pair.first) + "_vs_" + to_string(pair.second);
}

void validate_config(const ExperimentConfig& config) {
    if (config.manifest.empty()) throw ConfigError("config: manifest is required");
    if (config.out_dir.empty()) throw ConfigError("config: out_dir is required");

    if (config.task.kind == TaskKind::Binary &&
        config.task.pair.first == config.task.pair.second) {
        throw ConfigError("config: binary task needs two distinct classes");
    }
    if (config.model.num_classes != config.task.num_classes()) {
        throw ConfigError("config: model num_classes " +
                          std::to_string(config.model.num_classes) +
                          " does not match task " + config.task.id());
    }
    const bool binary_loss =
        config.training.loss == train::LossKind::BinaryCrossentropy;
    if (binary_loss != (config.task.kind == TaskKind::Binary)) {
        throw ConfigError(
            "config: loss kind must match the task (binary <=> 2 classes)");
    }

    if (config.channel != "multizoom") {
        channel_from_string(config.channel);  // throws on anything else
    }
    const bool mz_family = config.model.family == model::ModelFamily::MultiZoom4;
    if (config.multizoom() != mz_family) {
        throw ConfigError(
            "config: the multizoom channel and the multizoom4 family require "
            "each other");
    }

    if (!(config.split.ratio > 0.0 && config.split.ratio < 1.0) ||
        !(config.split.val_fraction > 0.0 && config.split.val_fraction < 1.0)) {
        throw ConfigError("config: split ratios must lie strictly in (0, 1)");
    }

    model::validate_spec(config.model);
    if (config.training.epochs < 1) throw ConfigError("config: epochs >= 1");
    if (!(config.training.learning_rate > 0.0)) {
        throw ConfigError("config: learning_rate > 0");
    }
    if (config.training.batch_size < 1) {
        throw ConfigError("config: batch_size >= 1");
    }
}

namespace {

TaskConfig task_from_json(const json& j) {
    TaskConfig task;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "multiclass3") {
        task.kind = TaskKind::Multiclass3;
    } else if (kind == "binary") {
        task.kind = TaskKind::Binary;
        const auto pair = j.at("pair").get<std::vector<std::string>>();
        if (pair.size() != 2) {
            throw ConfigError("config: task.pair needs exactly 2 classes");
        }
        SeverityClass a = severity_from_string(pair[0]);
        SeverityClass b = severity_from_string(pair[1]);
        if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
        task.pair = {a, b};
    } else {
        throw ConfigError("config: unknown task kind '" + kind + "'");
    }
    return task;
}

json task_to_json(const TaskConfig& task) {
    if (task.kind == TaskKind::Multiclass3) {
        return json{{"kind", "multiclass3"}};
    }
    return json{{"kind", "binary"},
                {"pair", {to_string(task.pair.first), to_string(task.pair.second)}}};
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        cfg.manifest = j.at("manifest").get<std::string>();
        cfg.task = task_from_json(j.at("task"));
        cfg.channel = j.value("channel", std::string("z0"));
        cfg.seed = j.value("seed", 0ULL);
        cfg.out_dir = j.at("out_dir").get<std::string>();

        const json& m = j.at("model");
        cfg.model.family =
            model::family_from_string(m.at("family").get<std::string>());
        cfg.model.backbones = m.at("backbones").get<std::vector<std::string>>();
        cfg.model.num_classes = m.value("num_classes", cfg.task.num_classes());
        cfg.model.head = m.contains("head")
                             ? m.at("head").get<std::vector<int>>()
                             : model::default_head(cfg.model.family);
        cfg.model.freeze_base = m.value("freeze_base", true);

        if (j.contains("training")) {
            const json& t = j.at("training");
            cfg.training.learning_rate = t.value("learning_rate", 0.001);
            cfg.training.epochs = t.value("epochs", 250);
            cfg.training.optimizer = train::optimizer_from_string(
                t.value("optimizer", std::string("adam")));
            cfg.training.loss = train::loss_from_string(t.value(
                "loss", cfg.task.kind == TaskKind::Binary
                            ? std::string("binary_crossentropy")
                            : std::string("multiclass_crossentropy")));
            cfg.training.batch_size = t.value("batch_size", 32);
            cfg.training.seed =
                t.value("seed", derive_seed(cfg.seed, "train"));
            cfg.training.checkpoint_policy = train::policy_from_string(t.value(
                "checkpoint_policy", std::string("best_val_accuracy")));
        } else {
            cfg.training.loss = cfg.task.kind == TaskKind::Binary
                                    ? train::LossKind::BinaryCrossentropy
                                    : train::LossKind::MulticlassCrossentropy;
            cfg.training.seed = derive_seed(cfg.seed, "train");
        }

        if (j.contains("split")) {
            const json& s = j.at("split");
            cfg.split.ratio = s.value("ratio", 0.8);
            cfg.split.val_fraction = s.value("val_fraction", 0.2);
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::string config_to_json_text(const ExperimentConfig& config) {
    json j = {
        {"manifest", config.manifest},
        {"task", task_to_json(config.task)},
        {"channel", config.channel},
        {"model",
         {{"family", model::to_string(config.model.family)},
          {"backbones", config.model.backbones},
          {"num_classes", config.model.num_classes},
          {"head", config.model.head},
          {"freeze_base", config.model.freeze_base}}},
        {"training",
         {{"learning_rate", config.training.learning_rate},
          {"epochs", config.training.epochs},
          {"optimizer", train::to_string(config.training.optimizer)},
          {"loss", train::to_string(config.training.loss)},
          {"batch_size", config.training.batch_size},
          {"seed", config.training.seed},
          {"checkpoint_policy",
           train::to_string(config.training.checkpoint_policy)}}},
        {"split",
         {{"ratio", config.split.ratio},
          {"val_fraction", config.split.val_fraction}}},
        {"seed", config.seed},
        {"out_dir", config.out_dir},
    };
    return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw PipelineError("cannot write config file " + file.string());
    out << config_to_json_text(config);
}

std::string model_descriptor(const model::ModelSpec& spec) {
    switch (spec.family) {
        case model::ModelFamily::Single:
            return spec.backbones[0];
        case model::ModelFamily::Stacked2:
            return spec.backbones[0] + "+" + spec.backbones[1];
        case model::ModelFamily::MultiZoom4: {
            std::string out;
            for (size_t i = 0; i < spec.backbones.size(); ++i) {
                if (i) out += "; ";
                out += "Z" + std::to_string(i) + ": " + spec.backbones[i];
            }
            return out;
        }
    }
    return "?";
}

}  // namespace woundsev::pipeline
