#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "labelsphere/factorize.hpp"

namespace labelsphere {

/// Ranked (label index, cosine proximity) pairs, proximities non-increasing,
/// ties broken by ascending label index.
struct RankedPredictions {
    std::vector<std::pair<int, double>> items;
    int skipped_zero_rows = 0;  // rows excluded because they carry no spectral mass
};

/// Sum of the embedding rows of a non-empty label set (unnormalized).
Eigen::VectorXd encode(const std::vector<int>& label_indices, const EmbeddingMatrix& E);

/// (a.b)/(|a||b|), clamped into [-1, 1]. Throws DegenerateVectorError on a
/// zero-norm input.
double cosine_proximity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Top-p labels by cosine proximity to v over the non-zero rows of E.
RankedPredictions decode(const Eigen::VectorXd& v, const EmbeddingMatrix& E, int p);

/// decode(sum(plus rows) - sum(minus rows)) with the query labels excluded
/// from the results.
RankedPredictions arithmetic_query(const std::vector<int>& plus, const std::vector<int>& minus,
                                   const EmbeddingMatrix& E, int p);

struct ZeroShotResult {
    EmbeddingMatrix embedding;  // N+1 rows, original rows unchanged
    double residual_norm;
};

/// Places a new class by the minimum-norm least-squares solution of
/// E x ~ pmi_with_known and appends x as row N.
ZeroShotResult zero_shot_insert(const EmbeddingMatrix& E, const Eigen::VectorXd& pmi_with_known);

}  // namespace labelsphere
