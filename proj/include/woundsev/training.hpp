#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "woundsev/metrics.hpp"
#include "woundsev/models.hpp"

namespace woundsev::train {

enum class LossKind { MulticlassCrossentropy, BinaryCrossentropy };
enum class OptimizerKind { Adam };
enum class CheckpointPolicy { BestValAccuracy, BestCombinedAccuracy };

const std::string& to_string(LossKind k);
LossKind loss_from_string(const std::string& s);
const std::string& to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& s);
const std::string& to_string(CheckpointPolicy p);
CheckpointPolicy policy_from_string(const std::string& s);

/// Training protocol: Adam at learning rate 0.001 for 250 epochs by default,
/// with both checkpoint callbacks always tracked. The loss kind must match
/// the class count (binary <=> 2 classes).
struct TrainingConfig {
    double learning_rate = 0.001;
    int epochs = 250;
    OptimizerKind optimizer = OptimizerKind::Adam;
    LossKind loss = LossKind::MulticlassCrossentropy;
    int batch_size = 32;
    uint64_t seed = 0;
    CheckpointPolicy checkpoint_policy = CheckpointPolicy::BestValAccuracy;

    bool operator==(const TrainingConfig&) const = default;
};

struct EpochStats {
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
};

struct TrainingHistory {
    std::vector<EpochStats> epochs;
    int best_val_epoch = 0;       // 1-based
    int best_combined_epoch = 0;  // 1-based
};

/// Epoch (1-based) the given policy would have checkpointed: the argmax of
/// validation accuracy, or of mean(train, validation) accuracy, with ties
/// broken toward the earliest epoch. Throws EmptyHistory.
int checkpoint_select(const TrainingHistory& history, CheckpointPolicy policy);

/// Per-epoch history rows as delimited text (epoch, train_loss, train_acc,
/// val_loss, val_acc). Byte-stable for identical histories.
std::string history_csv(const TrainingHistory& history);

/// Trainable-parameter values captured at a checkpoint, keyed by param id.
using Snapshot = std::map<std::string, std::vector<double>>;

Snapshot take_snapshot(model::ModelHandle& handle);
void apply_snapshot(model::ModelHandle& handle, const Snapshot& snapshot);

struct TrainResult {
    TrainingHistory history;
    Snapshot best_val;
    Snapshot best_combined;
};

/// One labelled sample: a single raster view, or the aligned Z0..Z3 4-tuple
/// for multi-zoom models. `label` indexes the task's class list.
struct Sample {
    std::vector<cv::Mat> views;
    int label = 0;
    std::string key;
};
using SampleSet = std::vector<Sample>;

/// Runs the full protocol on the handle (which it owns exclusively for the
/// duration): seeded shuffling, mini-batch Adam on the trainable parameters,
/// per-epoch train/validation stats and both checkpoint snapshots. Frozen
/// backbone parameters are never touched; when every branch is frozen their
/// features are computed once and reused across epochs. Deterministic for a
/// fixed (handle init, config) pair.
TrainResult train(model::ModelHandle& handle, const SampleSet& train_set,
                  const SampleSet& val_set, const TrainingConfig& config);

/// Runs the model over the test set and assembles the evaluation report
/// (confusion with prediction rows / gold columns, accuracy, per-class
/// precision and recall). Throws EmptyTestSet.
eval::EvalReport evaluate(const model::ModelHandle& handle,
                          const SampleSet& test_set,
                          eval::TaskDescriptor descriptor);

}  // namespace woundsev::train
