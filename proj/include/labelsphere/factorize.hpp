#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "labelsphere/pmi.hpp"

namespace labelsphere {

/// Full eigensystem of a symmetric matrix, eigenvalues sorted descending and
/// eigenvector signs fixed so the largest-magnitude component is positive.
struct Spectrum {
    Eigen::VectorXd eigenvalues;   // descending
    Eigen::MatrixXd eigenvectors;  // columns aligned with eigenvalues
};

/// Rank-k class embedding E^k = U_k * sqrt(max(Sigma_k, 0)).
struct EmbeddingMatrix {
    Eigen::MatrixXd rows;                 // N x k, row i embeds class i
    Eigen::VectorXd retained_eigenvalues; // length k, clamped at 0
    int clamped_count = 0;                // eigenvalues among the top-k clamped to 0

    Eigen::Index n() const { return rows.rows(); }
    Eigen::Index k() const { return rows.cols(); }

    /// Rows with no positive spectral mass; excluded from decoding.
    int zero_row_count() const;
};

/// Dense symmetric eigendecomposition, deterministic up to the documented
/// sign convention. Throws NumericError on solver failure.
Spectrum eigendecompose(const PmiMatrix& m);
Spectrum eigendecompose(const Eigen::MatrixXd& symmetric);

/// Keeps the top-k eigenpairs, clamping negative eigenvalues to zero before
/// the square root. Throws ArgumentError unless 1 <= k <= N.
EmbeddingMatrix build_embedding(const Spectrum& s, int k);

/// Fraction of squared spectral mass captured by the top-k clamped
/// eigenvalues; 1 for an all-zero clamped spectrum.
double explained_variance(const Spectrum& s, int k);

}  // namespace labelsphere
