#include "woundsev/training.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "woundsev/errors.hpp"
#include "woundsev/raster.hpp"

namespace woundsev::train {

const std::string& to_string(LossKind k) {
    static const std::string names[2] = {"multiclass_crossentropy",
                                         "binary_crossentropy"};
    return names[static_cast<int>(k)];
}

LossKind loss_from_string(const std::string& s) {
    for (LossKind k :
         {LossKind::MulticlassCrossentropy, LossKind::BinaryCrossentropy}) {
        if (s == to_string(k)) return k;
    }
    throw ConfigError("unknown loss '" + s + "'");
}

const std::string& to_string(OptimizerKind k) {
    static const std::string names[1] = {"adam"};
    return names[static_cast<int>(k)];
}

OptimizerKind optimizer_from_string(const std::string& s) {
    if (s == "adam") return OptimizerKind::Adam;
    throw ConfigError("unknown optimizer '" + s + "'");
}

const std::string& to_string(CheckpointPolicy p) {
    static const std::string names[2] = {"best_val_accuracy",
                                         "best_combined_accuracy"};
    return names[static_cast<int>(p)];
}

CheckpointPolicy policy_from_string(const std::string& s) {
    for (CheckpointPolicy p : {CheckpointPolicy::BestValAccuracy,
                               CheckpointPolicy::BestCombinedAccuracy}) {
        if (s == to_string(p)) return p;
    }
    throw ConfigError("unknown checkpoint policy '" + s + "'");
}

int checkpoint_select(const TrainingHistory& history, CheckpointPolicy policy) {
    if (history.epochs.empty()) {
        throw EmptyHistory("checkpoint_select on an empty history");
    }
    int best = 1;
    double best_score = -1.0;
    for (size_t i = 0; i < history.epochs.size(); ++i) {
        const EpochStats& e = history.epochs[i];
        const double score = policy == CheckpointPolicy::BestValAccuracy
                                 ? e.val_acc
                                 : 0.5 * (e.train_acc + e.val_acc);
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(i) + 1;
        }
    }
    return best;
}

std::string history_csv(const TrainingHistory& history) {
    std::ostringstream out;
    out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
    char buf[160];
    for (size_t i = 0; i < history.epochs.size(); ++i) {
        const EpochStats& e = history.epochs[i];
        std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g,%.12g,%.12g\n", i + 1,
                      e.train_loss, e.train_acc, e.val_loss, e.val_acc);
        out << buf;
    }
    return out.str();
}

Snapshot take_snapshot(model::ModelHandle& handle) {
    Snapshot snap;
    for (const nn::Param* p : handle.trainable_params()) {
        snap[p->id] = p->value;
    }
    return snap;
}

void apply_snapshot(model::ModelHandle& handle, const Snapshot& snapshot) {
    for (nn::Param* p : handle.all_params()) {
        auto it = snapshot.find(p->id);
        if (it == snapshot.end()) continue;
        if (it->second.size() != p->value.size()) {
            throw ArtifactSpecMismatch("snapshot entry '" + p->id +
                                       "' has the wrong size");
        }
        p->value = it->second;
    }
}

namespace {

void check_samples(const model::ModelHandle& handle, const SampleSet& set,
                   const char* which) {
    const size_t arity = static_cast<size_t>(handle.view_count());
    for (const auto& s : set) {
        if (s.views.size() != arity) {
            throw ShapeMismatch(std::string(which) + " sample '" + s.key +
                                "' has " + std::to_string(s.views.size()) +
                                " views, model expects " +
                                std::to_string(arity));
        }
        for (const auto& v : s.views) {
            if (v.empty()) {
                throw ShapeMismatch(std::string(which) + " sample '" + s.key +
                                    "' carries an empty raster");
            }
        }
        if (s.label < 0 || s.label >= handle.spec.num_classes) {
            throw ShapeMismatch(std::string(which) + " sample '" + s.key +
                                "' label out of range");
        }
    }
}

nn::Tensor branch_input(const model::Branch& branch, const cv::Mat& view) {
    const cv::Mat resized =
        resize_for_backbone(view, branch.info.input_size, branch.info.input_size);
    return model::to_input_tensor(resized);
}

nn::Tensor sample_features(const model::ModelHandle& handle, const Sample& s) {
    std::vector<nn::Tensor> parts;
    parts.reserve(handle.branches.size());
    for (size_t b = 0; b < handle.branches.size(); ++b) {
        const cv::Mat& view = s.views[handle.view_count() == 1 ? 0 : b];
        parts.push_back(
            handle.branches[b].net.infer(branch_input(handle.branches[b], view)));
    }
    return nn::concat_vec(parts);
}

struct LossAcc {
    double loss = 0.0;
    double acc = 0.0;
};

int argmax(const nn::Tensor& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i) {
        if (v.data[i] > v.data[best]) best = i;
    }
    return best;
}

LossAcc dataset_stats(const model::ModelHandle& handle, const SampleSet& set,
                      const std::vector<nn::Tensor>* features) {
    LossAcc out;
    for (size_t i = 0; i < set.size(); ++i) {
        const nn::Tensor feats =
            features ? (*features)[i] : sample_features(handle, set[i]);
        const nn::Tensor probs = nn::softmax(handle.head.infer(feats));
        out.loss += nn::cross_entropy(probs, set[i].label);
        out.acc += argmax(probs) == set[i].label ? 1.0 : 0.0;
    }
    out.loss /= static_cast<double>(set.size());
    out.acc /= static_cast<double>(set.size());
    return out;
}

}  // namespace

TrainResult train(model::ModelHandle& handle, const SampleSet& train_set,
                  const SampleSet& val_set, const TrainingConfig& config) {
    if (train_set.empty()) throw EmptyDataset("training set is empty");
    if (val_set.empty()) throw EmptyValidation("validation set is empty");
    if (config.epochs < 1) throw ConfigError("epochs must be >= 1");
    if (config.batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (!(config.learning_rate > 0.0)) {
        throw ConfigError("learning_rate must be > 0");
    }
    const bool binary_loss = config.loss == LossKind::BinaryCrossentropy;
    if (binary_loss != (handle.spec.num_classes == 2)) {
        throw LossClassMismatch(
            "loss " + to_string(config.loss) + " does not match a " +
            std::to_string(handle.spec.num_classes) + "-class model");
    }
    check_samples(handle, train_set, "train");
    check_samples(handle, val_set, "validation");

    // With every branch frozen the backbone features of a sample never change,
    // so they are computed once and training touches only the head.
    const bool cache_features = handle.spec.freeze_base;
    std::vector<nn::Tensor> train_feats, val_feats;
    if (cache_features) {
        train_feats.reserve(train_set.size());
        for (const auto& s : train_set) {
            train_feats.push_back(sample_features(handle, s));
        }
        val_feats.reserve(val_set.size());
        for (const auto& s : val_set) {
            val_feats.push_back(sample_features(handle, s));
        }
    }

    const std::vector<nn::Param*> trainable = handle.trainable_params();
    nn::Adam adam(config.learning_rate);
    nn::zero_grads(trainable);

    TrainResult result;
    double best_val = -1.0;
    double best_combined = -1.0;

    std::vector<size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        Rng shuffle_rng(derive_seed(config.seed, "shuffle",
                                    static_cast<uint64_t>(epoch)));
        shuffle_rng.shuffle(order);

        for (size_t start = 0; start < order.size();
             start += static_cast<size_t>(config.batch_size)) {
            const size_t end = std::min(
                order.size(), start + static_cast<size_t>(config.batch_size));
            for (size_t i = start; i < end; ++i) {
                const Sample& s = train_set[order[i]];
                nn::Tensor feats;
                if (cache_features) {
                    feats = train_feats[order[i]];
                } else {
                    std::vector<nn::Tensor> parts;
                    for (size_t b = 0; b < handle.branches.size(); ++b) {
                        const cv::Mat& view =
                            s.views[handle.view_count() == 1 ? 0 : b];
                        parts.push_back(handle.branches[b].net.forward(
                            branch_input(handle.branches[b], view)));
                    }
                    feats = nn::concat_vec(parts);
                }
                const nn::Tensor logits = handle.head.forward(feats);
                const nn::Tensor probs = nn::softmax(logits);
                const nn::Tensor dlogits =
                    nn::cross_entropy_logit_grad(probs, s.label);
                const nn::Tensor dfeats = handle.head.backward(dlogits);
                if (!cache_features) {
                    // split the concat gradient back onto the branches
                    size_t off = 0;
                    for (auto& branch : handle.branches) {
                        nn::Tensor part = nn::Tensor::vec(branch.info.feature_width);
                        std::copy(dfeats.data.begin() + off,
                                  dfeats.data.begin() + off + part.data.size(),
                                  part.data.begin());
                        off += part.data.size();
                        branch.net.backward(part);
                    }
                }
            }
            nn::scale_grads(trainable, 1.0 / static_cast<double>(end - start));
            adam.step(trainable);
            nn::zero_grads(trainable);
        }

        const LossAcc tr = dataset_stats(handle, train_set,
                                         cache_features ? &train_feats : nullptr);
        const LossAcc va = dataset_stats(handle, val_set,
                                         cache_features ? &val_feats : nullptr);
        result.history.epochs.push_back(
            EpochStats{tr.loss, tr.acc, va.loss, va.acc});

        if (va.acc > best_val) {
            best_val = va.acc;
            result.history.best_val_epoch = epoch;
            result.best_val = take_snapshot(handle);
        }
        const double combined = 0.5 * (tr.acc + va.acc);
        if (combined > best_combined) {
            best_combined = combined;
            result.history.best_combined_epoch = epoch;
            result.best_combined = take_snapshot(handle);
        }
    }
    return result;
}

eval::EvalReport evaluate(const model::ModelHandle& handle,
                          const SampleSet& test_set,
                          eval::TaskDescriptor descriptor) {
    if (test_set.empty()) throw EmptyTestSet("evaluation needs a non-empty test set");
    check_samples(handle, test_set, "test");
    eval::ConfusionMatrix confusion(handle.spec.num_classes);
    for (const auto& s : test_set) {
        const nn::Tensor probs = model::predict(handle, s.views);
        confusion.add(argmax(probs), s.label);
    }
    return eval::make_report(std::move(descriptor), std::move(confusion));
}

}  // namespace woundsev::train
