#include "woundsev/metrics.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "woundsev/errors.hpp"

namespace woundsev::eval {

using nlohmann::json;

ConfusionMatrix::ConfusionMatrix(int k) : k_(k), counts_(k * k, 0) {
    if (k < 1) throw EmptyMatrix("confusion matrix needs at least one class");
}

ConfusionMatrix ConfusionMatrix::from_rows(
    const std::vector<std::vector<long long>>& rows) {
    ConfusionMatrix m(static_cast<int>(rows.size()));
    for (int p = 0; p < m.k_; ++p) {
        if (rows[p].size() != static_cast<size_t>(m.k_)) {
            throw EmptyMatrix("confusion matrix rows must be square");
        }
        for (int g = 0; g < m.k_; ++g) m.add(p, g, rows[p][g]);
    }
    return m;
}

void ConfusionMatrix::add(int predicted, int gold, long long n) {
    if (predicted < 0 || predicted >= k_ || gold < 0 || gold >= k_) {
        throw DataError("confusion index out of range");
    }
    if (n < 0) throw DataError("confusion counts are non-negative");
    counts_[static_cast<size_t>(predicted) * k_ + gold] += n;
}

long long ConfusionMatrix::at(int predicted, int gold) const {
    return counts_[static_cast<size_t>(predicted) * k_ + gold];
}

long long ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0LL);
}

long long ConfusionMatrix::trace() const {
    long long t = 0;
    for (int i = 0; i < k_; ++i) t += at(i, i);
    return t;
}

long long ConfusionMatrix::row_sum(int predicted) const {
    long long s = 0;
    for (int g = 0; g < k_; ++g) s += at(predicted, g);
    return s;
}

long long ConfusionMatrix::col_sum(int gold) const {
    long long s = 0;
    for (int p = 0; p < k_; ++p) s += at(p, gold);
    return s;
}

ConfusionMatrix confusion_from_predictions(const std::vector<int>& predicted,
                                           const std::vector<int>& gold,
                                           int k) {
    if (predicted.size() != gold.size()) {
        throw DataError("prediction and gold vectors differ in length");
    }
    ConfusionMatrix m(k);
    for (size_t i = 0; i < predicted.size(); ++i) {
        m.add(predicted[i], gold[i]);
    }
    return m;
}

double accuracy(const ConfusionMatrix& m) {
    const long long total = m.total();
    if (total == 0) throw EmptyMatrix("accuracy of an empty confusion matrix");
    return static_cast<double>(m.trace()) / static_cast<double>(total);
}

PerClassMetrics per_class_metrics(const ConfusionMatrix& m) {
    PerClassMetrics out;
    for (int i = 0; i < m.classes(); ++i) {
        const long long row = m.row_sum(i);
        const long long col = m.col_sum(i);
        out.precision.push_back(
            row == 0 ? std::nullopt
                     : std::optional<double>(static_cast<double>(m.at(i, i)) /
                                             static_cast<double>(row)));
        out.recall.push_back(
            col == 0 ? std::nullopt
                     : std::optional<double>(static_cast<double>(m.at(i, i)) /
                                             static_cast<double>(col)));
    }
    return out;
}

EvalReport make_report(TaskDescriptor descriptor, ConfusionMatrix confusion) {
    if (descriptor.class_names.size() !=
        static_cast<size_t>(confusion.classes())) {
        throw DataError("class names do not match the confusion matrix size");
    }
    EvalReport report;
    report.descriptor = std::move(descriptor);
    report.accuracy_value = accuracy(confusion);
    report.per_class = per_class_metrics(confusion);
    report.confusion = std::move(confusion);
    return report;
}

namespace {

std::string pct1(std::optional<double> v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", *v * 100.0);
    return buf;
}

std::string capitalized(const std::string& s) {
    std::string out = s;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
    return out;
}

void pad_to(std::string& line, size_t width) {
    if (line.size() < width) line.append(width - line.size(), ' ');
}

}  // namespace

std::string render_confusion(const EvalReport& report) {
    const auto& names = report.descriptor.class_names;
    const int k = report.confusion.classes();
    constexpr size_t col = 10;
    const size_t head = 18;

    std::ostringstream out;
    std::string line;

    line.assign(head, ' ');
    line += "Gold Label";
    out << line << "\n";

    line.assign(head, ' ');
    for (int g = 0; g < k; ++g) {
        std::string cell = capitalized(names[g]);
        pad_to(cell, col);
        line += cell;
    }
    line += "Precision";
    out << line << "\n";

    for (int p = 0; p < k; ++p) {
        line = p == 0 ? "Prediction " : "           ";
        std::string rowname = capitalized(names[p]);
        pad_to(rowname, head - line.size());
        line += rowname;
        for (int g = 0; g < k; ++g) {
            std::string cell = std::to_string(report.confusion.at(p, g));
            pad_to(cell, col);
            line += cell;
        }
        line += pct1(report.per_class.precision[p]);
        out << line << "\n";
    }

    line = "Recall";
    pad_to(line, head);
    for (int g = 0; g < k; ++g) {
        std::string cell = pct1(report.per_class.recall[g]);
        pad_to(cell, col);
        line += cell;
    }
    line += pct1(report.accuracy_value);
    out << line << "\n";
    return out.str();
}

void save_report(const EvalReport& report, const std::filesystem::path& file) {
    json rows = json::array();
    for (int p = 0; p < report.confusion.classes(); ++p) {
        json row = json::array();
        for (int g = 0; g < report.confusion.classes(); ++g) {
            row.push_back(report.confusion.at(p, g));
        }
        rows.push_back(row);
    }
    auto opt_list = [](const std::vector<std::optional<double>>& v) {
        json arr = json::array();
        for (const auto& x : v) {
            if (x) {
                arr.push_back(*x);
            } else {
                arr.push_back(nullptr);
            }
        }
        return arr;
    };
    json j = {
        {"task", report.descriptor.task},
        {"model", report.descriptor.model},
        {"family", report.descriptor.family},
        {"channel", report.descriptor.channel},
        {"classes", report.descriptor.class_names},
        {"confusion", rows},
        {"accuracy", report.accuracy_value},
        {"precision", opt_list(report.per_class.precision)},
        {"recall", opt_list(report.per_class.recall)},
    };
    std::ofstream out(file);
    if (!out) throw PipelineError("cannot write report " + file.string());
    out << j.dump(2) << "\n";
}

EvalReport load_report(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open report " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("unreadable report " + file.string() + ": " + e.what());
    }
    try {
        TaskDescriptor td;
        td.task = j.at("task").get<std::string>();
        td.model = j.at("model").get<std::string>();
        td.family = j.value("family", std::string("single"));
        td.channel = j.at("channel").get<std::string>();
        td.class_names = j.at("classes").get<std::vector<std::string>>();
        auto rows = j.at("confusion").get<std::vector<std::vector<long long>>>();
        return make_report(std::move(td), ConfusionMatrix::from_rows(rows));
    } catch (const json::exception& e) {
        throw DataError("report fields in " + file.string() + ": " + e.what());
    }
}

}  // namespace woundsev::eval
