#include "labelsphere/eval.hpp"

#include <algorithm>
#include <numeric>

#include "labelsphere/errors.hpp"

namespace labelsphere {

namespace {
constexpr int kMapCutoff = 100;
}

ClassWeights compute_class_weights(const std::vector<std::int64_t>& frequency, double cap_min,
                                   double cap_max, double scale) {
    if (cap_min > cap_max || cap_min <= 0.0) throw ArgumentError("require 0 < cap_min <= cap_max");
    if (scale <= 0.0) throw ArgumentError("scale must be positive");
    const double total = static_cast<double>(
        std::accumulate(frequency.begin(), frequency.end(), std::int64_t{0}));
    if (total <= 0.0) throw DegenerateStatisticsError("all-zero class frequencies");
    ClassWeights weights;
    weights.cap_min = cap_min;
    weights.cap_max = cap_max;
    weights.weights.reserve(frequency.size());
    for (std::int64_t f : frequency) {
        weights.weights.push_back(
            std::clamp(scale * static_cast<double>(f) / total, cap_min, cap_max));
    }
    return weights;
}

double precision_at_cutoff(const std::vector<EvalInstance>& instances, int num_classes, int n,
                           int k) {
    if (n < 0 || n >= num_classes) throw ArgumentError("class index out of range");
    if (k < 1) throw ArgumentError("cutoff k must be >= 1");
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    for (const auto& instance : instances) {
        const auto limit = std::min<std::size_t>(instance.predictions.size(),
                                                 static_cast<std::size_t>(k));
        for (std::size_t r = 0; r < limit; ++r) {
            if (instance.predictions[r] != n) continue;
            if (instance.truth.count(n)) {
                ++tp;
            } else {
                ++fp;
            }
        }
    }
    if (tp + fp == 0) return 0.0;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

EvalResult weighted_map_at_100(const std::vector<EvalInstance>& instances,
                               const ClassWeights& weights) {
    if (instances.empty()) throw ArgumentError("evaluation requires at least one instance");
    const int num_classes = static_cast<int>(weights.weights.size());
    for (const auto& instance : instances) {
        if (instance.predictions.size() > kMapCutoff) {
            throw ArgumentError("prediction lists must have length <= 100");
        }
        for (int index : instance.predictions) {
            if (index < 0 || index >= num_classes) {
                throw ArgumentError("prediction label index out of range");
            }
        }
    }

    // For each class, collect (rank, is_tp) occurrences, then accumulate the
    // prefix TP/FP counts over cutoffs 1..100.
    std::vector<std::vector<std::pair<int, bool>>> hits(static_cast<std::size_t>(num_classes));
    std::vector<bool> has_positive(static_cast<std::size_t>(num_classes), false);
    for (const auto& instance : instances) {
        for (std::size_t r = 0; r < instance.predictions.size(); ++r) {
            const int n = instance.predictions[r];
            hits[static_cast<std::size_t>(n)].emplace_back(static_cast<int>(r) + 1,
                                                           instance.truth.count(n) > 0);
        }
        for (int n : instance.truth) {
            if (n >= 0 && n < num_classes) has_positive[static_cast<std::size_t>(n)] = true;
        }
    }

    EvalResult result;
    result.per_class_ap.assign(static_cast<std::size_t>(num_classes), 0.0);
    for (int n = 0; n < num_classes; ++n) {
        auto& occurrences = hits[static_cast<std::size_t>(n)];
        std::sort(occurrences.begin(), occurrences.end());
        double ap = 0.0;
        std::size_t next = 0;
        std::int64_t tp = 0;
        std::int64_t fp = 0;
        for (int k = 1; k <= kMapCutoff; ++k) {
            while (next < occurrences.size() && occurrences[next].first <= k) {
                if (occurrences[next].second) {
                    ++tp;
                } else {
                    ++fp;
                }
                ++next;
            }
            if (tp + fp > 0) {
                ap += static_cast<double>(tp) / static_cast<double>(tp + fp);
            }
        }
        result.per_class_ap[static_cast<std::size_t>(n)] = ap / kMapCutoff;
        if (has_positive[static_cast<std::size_t>(n)]) ++result.counted_classes;
    }

    double weighted = 0.0;
    for (int n = 0; n < num_classes; ++n) {
        weighted += weights.weights[static_cast<std::size_t>(n)] *
                    result.per_class_ap[static_cast<std::size_t>(n)];
    }
    result.weighted_map = weighted / num_classes;
    return result;
}

}  // namespace labelsphere
