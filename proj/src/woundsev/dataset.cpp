#include "woundsev/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "woundsev/errors.hpp"
#include "woundsev/rng.hpp"

namespace woundsev {

std::map<SeverityClass, size_t> class_counts(
    const std::vector<ImageRecord>& records) {
    if (records.empty()) throw EmptyDataset("class_counts: no records");
    std::map<SeverityClass, size_t> counts;
    for (SeverityClass c : kAllSeverities) counts[c] = 0;
    for (const auto& r : records) ++counts[r.label];
    return counts;
}

size_t total_roi_units(const std::vector<ImageRecord>& records) {
    size_t n = 0;
    for (const auto& r : records) n += r.roi_units();
    return n;
}

std::vector<ImageRecord> filter_classes(const std::vector<ImageRecord>& records,
                                        const std::set<SeverityClass>& keep) {
    std::vector<ImageRecord> out;
    for (const auto& r : records) {
        if (keep.count(r.label)) out.push_back(r);
    }
    if (out.empty()) {
        throw EmptyResult("filter_classes: no record matches the kept classes");
    }
    return out;
}

DatasetSplit split_by_group(const std::vector<ImageRecord>& records,
                            double ratio, uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw InvalidSpec("split ratio must lie strictly between 0 and 1");
    }

    // Collect groups in first-appearance order, then shuffle deterministically.
    std::vector<std::string> group_order;
    std::map<std::string, size_t> group_units;
    for (const auto& r : records) {
        const std::string& g = r.group_id.empty() ? r.image_id : r.group_id;
        auto [it, inserted] = group_units.try_emplace(g, 0);
        if (inserted) group_order.push_back(g);
        it->second += r.roi_units();
    }
    if (group_order.size() < 2) {
        throw TooFewGroups("split_by_group needs at least 2 distinct groups, got " +
                           std::to_string(group_order.size()));
    }

    Rng rng(derive_seed(seed, "split"));
    rng.shuffle(group_order);

    // Cut the shuffled sequence at the prefix whose unit count is nearest to
    // ratio * total, keeping both sides non-empty. Any cut point is at most
    // one group away from the target, so the achieved ratio deviates from
    // `ratio` by less than the largest group's fraction.
    const size_t total = total_roi_units(records);
    const double target = ratio * static_cast<double>(total);
    size_t prefix = 0;
    size_t best_cut = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < group_order.size(); ++k) {
        prefix += group_units.at(group_order[k - 1]);
        const double err = std::abs(static_cast<double>(prefix) - target);
        if (err < best_err) {
            best_err = err;
            best_cut = k;
        }
    }

    DatasetSplit split;
    split.ratio = ratio;
    split.seed = seed;
    for (size_t k = 0; k < group_order.size(); ++k) {
        split.group_assignment[group_order[k]] =
            k < best_cut ? "train_val" : "test";
    }
    for (const auto& r : records) {
        const std::string& g = r.group_id.empty() ? r.image_id : r.group_id;
        if (split.group_assignment.at(g) == "train_val") {
            split.train_val.push_back(r);
        } else {
            split.test.push_back(r);
        }
    }
    return split;
}

}  // namespace woundsev
