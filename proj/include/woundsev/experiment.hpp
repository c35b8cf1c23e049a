#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "woundsev/models.hpp"
#include "woundsev/severity.hpp"
#include "woundsev/training.hpp"

namespace woundsev::pipeline {

enum class TaskKind { Multiclass3, Binary };

/// Classification task: the three-way severity problem or one of the three
/// pairwise problems. The binary pair is kept in severity order.
struct TaskConfig {
    TaskKind kind = TaskKind::Multiclass3;
    std::pair<SeverityClass, SeverityClass> pair = {SeverityClass::Green,
                                                    SeverityClass::Yellow};

    int num_classes() const { return kind == TaskKind::Multiclass3 ? 3 : 2; }
    std::vector<SeverityClass> classes() const;
    std::vector<std::string> class_names() const;
    /// e.g. "multiclass3" or "binary:green_vs_yellow"
    std::string id() const;

    bool operator==(const TaskConfig&) const = default;
};

struct SplitConfig {
    double ratio = 0.8;         // train+validation share of ROI units
    double val_fraction = 0.2;  // validation share carved out of train+val

    bool operator==(const SplitConfig&) const = default;
};

/// One experiment, one file. All randomness in the pipeline flows from
/// `seed`, fanned out by purpose (split, carve, init, shuffle, fixture).
struct ExperimentConfig {
    std::string manifest;
    TaskConfig task;
    std::string channel = "z0";  // z0..z3 or "multizoom"
    model::ModelSpec model;
    train::TrainingConfig training;
    SplitConfig split;
    uint64_t seed = 0;
    std::string out_dir;

    bool multizoom() const { return channel == "multizoom"; }

    bool operator==(const ExperimentConfig&) const = default;
};

/// Cross-field invariants: a binary task requires 2 classes and the binary
/// loss (and vice versa); the multizoom channel requires the multizoom4
/// family (and vice versa); ratios lie strictly inside (0, 1).
void validate_config(const ExperimentConfig& config);

ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& config);

ExperimentConfig load_config(const std::filesystem::path& file);
void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& file);

/// Human-readable model descriptor used in reports, mirroring the published
/// table style: "VGG19", "VGG19+NasNetLarge", "Z0: VGG19; Z1: ...".
std::string model_descriptor(const model::ModelSpec& spec);

}  // namespace woundsev::pipeline
