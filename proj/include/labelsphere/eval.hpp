#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace labelsphere {

/// Per-class importance weights, clamped into [cap_min, cap_max].
struct ClassWeights {
    std::vector<double> weights;
    double cap_min = 0.1;
    double cap_max = 10.0;
};

struct EvalResult {
    double weighted_map = 0.0;          // may exceed 1 with weights above 1
    std::vector<double> per_class_ap;   // unweighted, each in [0, 1]
    int counted_classes = 0;            // classes with >= 1 ground-truth positive
};

/// One evaluation instance: ranked predicted label indices (best first) and
/// the ground-truth label set.
struct EvalInstance {
    std::vector<int> predictions;  // rank order, no duplicates
    std::set<int> truth;
};

/// weights[i] = clamp(scale * frequency[i] / sum(frequency), cap_min, cap_max).
ClassWeights compute_class_weights(const std::vector<std::int64_t>& frequency, double cap_min,
                                   double cap_max, double scale);

/// Dataset-level precision for class n at cut-off k: over all instances, a
/// prediction of n at rank <= k is a TP when the truth contains n. Returns 0
/// when n is never predicted within rank k.
double precision_at_cutoff(const std::vector<EvalInstance>& instances, int num_classes, int n,
                           int k);

/// Class-weighted MAP@100: per_class_ap[n] = sum_{k=1..100} P(k,n)/100 and
/// weighted_map = (1/N) sum_n weights[n] * per_class_ap[n].
EvalResult weighted_map_at_100(const std::vector<EvalInstance>& instances,
                               const ClassWeights& weights);

}  // namespace labelsphere
