#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace woundsev::eval {

/// K x K integer confusion counts with rows = predicted class and
/// columns = gold class, in the fixed class order of the task
/// (Green, Yellow, Red for multi-class; the milder class first for binary).
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int k);
    static ConfusionMatrix from_rows(
        const std::vector<std::vector<long long>>& rows);

    int classes() const { return k_; }
    void add(int predicted, int gold, long long n = 1);
    long long at(int predicted, int gold) const;
    long long total() const;
    long long trace() const;
    long long row_sum(int predicted) const;
    long long col_sum(int gold) const;

    bool operator==(const ConfusionMatrix&) const = default;

private:
    int k_;
    std::vector<long long> counts_;
};

ConfusionMatrix confusion_from_predictions(const std::vector<int>& predicted,
                                           const std::vector<int>& gold, int k);

/// trace / total, the fraction of correctly predicted samples. For two
/// classes this is exactly (TP + TN) / (TP + FP + FN + TN).
/// Throws EmptyMatrix when the matrix holds no samples.
double accuracy(const ConfusionMatrix& m);

/// precision_i = C[i,i] / row_i, recall_j = C[j,j] / col_j. A zero row or
/// column yields an empty optional (undefined), never a crash.
struct PerClassMetrics {
    std::vector<std::optional<double>> precision;
    std::vector<std::optional<double>> recall;
};
PerClassMetrics per_class_metrics(const ConfusionMatrix& m);

struct TaskDescriptor {
    std::string task;     // "multiclass3" or e.g. "binary:green_vs_yellow"
    std::string model;    // human-readable model descriptor
    std::string family;   // "single" | "stacked2" | "multizoom4"
    std::string channel;  // "z0".."z3" or "multizoom"
    std::vector<std::string> class_names;
};

struct EvalReport {
    TaskDescriptor descriptor;
    ConfusionMatrix confusion{1};
    double accuracy_value = 0.0;
    PerClassMetrics per_class;
};

EvalReport make_report(TaskDescriptor descriptor, ConfusionMatrix confusion);

/// Plain-text table in the published confusion-figure layout: prediction
/// rows, gold columns, a precision column, a recall row and the overall
/// accuracy in the corner (percentages with one decimal).
std::string render_confusion(const EvalReport& report);

void save_report(const EvalReport& report, const std::filesystem::path& file);
EvalReport load_report(const std::filesystem::path& file);

}  // namespace woundsev::eval
