#include "labelsphere/pmi.hpp"

#include <cmath>

#include "labelsphere/errors.hpp"

namespace labelsphere {

double PmiMatrix::entry(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0.0 : it->second;
}

void PmiMatrix::set(int i, int j, double value) {
    if (i > j) std::swap(i, j);
    entries_[{i, j}] = value;
}

Eigen::MatrixXd PmiMatrix::to_dense() const {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                                  static_cast<Eigen::Index>(n_));
    for (const auto& [key, value] : entries_) {
        dense(key.first, key.second) = value;
        dense(key.second, key.first) = value;
    }
    return dense;
}

PmiMatrix compute_pmi(const CooccurrenceStats& stats, const PmiOptions& options) {
    if (options.alpha < 0.0) throw ArgumentError("smoothing alpha must be >= 0");
    if (stats.num_instances() <= 0) {
        throw DegenerateStatisticsError("PMI requires a non-empty corpus");
    }
    for (std::size_t i = 0; i < stats.num_labels(); ++i) {
        if (stats.marginal(static_cast<int>(i)) <= 0) {
            throw DegenerateStatisticsError("zero marginal count for retained label " +
                                            std::to_string(i));
        }
    }
    const double alpha = options.alpha;
    const double log_total = std::log(static_cast<double>(stats.num_instances()) + alpha);
    PmiMatrix matrix(stats.num_labels(), options.mode);
    for (const auto& [key, joint] : stats.pairs()) {
        const auto [i, j] = key;
        if (i == j && !options.include_diagonal) continue;
        const double log_joint = std::log(static_cast<double>(joint) + alpha);
        const double log_pi = std::log(static_cast<double>(stats.marginal(i)) + alpha);
        const double log_pj = std::log(static_cast<double>(stats.marginal(j)) + alpha);
        // ln p(i,j) - ln p(i) - ln p(j); the |D| normalizers collapse.
        double value = log_joint + log_total - log_pi - log_pj;
        if (options.mode == PmiMode::Positive) {
            if (value <= 0.0) continue;
        }
        matrix.set(i, j, value);
    }
    return matrix;
}

}  // namespace labelsphere
