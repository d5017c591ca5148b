#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>

#include "labelsphere/corpus.hpp"

namespace labelsphere {

enum class PmiMode { Positive, Raw };

struct PmiOptions {
    PmiMode mode = PmiMode::Positive;
    double alpha = 0.0;            // additive smoothing on joint and marginal counts
    bool include_diagonal = true;  // diagonal entries equal -ln p(L_i)
};

/// Sparse symmetric pointwise mutual information matrix. Unobserved pairs are
/// implicitly zero; in positive mode non-positive values are dropped.
class PmiMatrix {
public:
    PmiMatrix(std::size_t n, PmiMode mode) : n_(n), mode_(mode) {}

    std::size_t n() const { return n_; }
    PmiMode mode() const { return mode_; }

    double entry(int i, int j) const;
    const std::map<std::pair<int, int>, double>& entries() const { return entries_; }

    void set(int i, int j, double value);

    Eigen::MatrixXd to_dense() const;

private:
    std::size_t n_;
    PmiMode mode_;
    std::map<std::pair<int, int>, double> entries_;  // keyed i <= j
};

/// PMI(i,j) = ln((c_ij+a)/(|D|+a)) - ln((c_i+a)/(|D|+a)) - ln((c_j+a)/(|D|+a))
/// over observed pairs. Throws DegenerateStatisticsError on an empty corpus or
/// a zero marginal.
PmiMatrix compute_pmi(const CooccurrenceStats& stats, const PmiOptions& options = {});

}  // namespace labelsphere
