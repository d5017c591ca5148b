#include "labelsphere/factorize.hpp"

#include <algorithm>
#include <cmath>

#include "labelsphere/errors.hpp"

namespace labelsphere {

int EmbeddingMatrix::zero_row_count() const {
    int zero_rows = 0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        if (rows.row(i).norm() == 0.0) ++zero_rows;
    }
    return zero_rows;
}

Spectrum eigendecompose(const PmiMatrix& m) { return eigendecompose(m.to_dense()); }

Spectrum eigendecompose(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols()) {
        throw ArgumentError("eigendecompose requires a square matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    if (solver.info() != Eigen::Success) {
        throw NumericError("symmetric eigensolver failed to converge (N=" +
                           std::to_string(symmetric.rows()) + ")");
    }
    const Eigen::Index n = symmetric.rows();
    Spectrum spectrum;
    spectrum.eigenvalues.resize(n);
    spectrum.eigenvectors.resize(n, n);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index c = 0; c < n; ++c) {
        spectrum.eigenvalues(c) = solver.eigenvalues()(n - 1 - c);
        spectrum.eigenvectors.col(c) = solver.eigenvectors().col(n - 1 - c);
    }
    // Sign convention: largest-magnitude component positive, tie to lowest index.
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index argmax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double mag = std::abs(spectrum.eigenvectors(i, c));
            if (mag > best) {
                best = mag;
                argmax = i;
            }
        }
        if (spectrum.eigenvectors(argmax, c) < 0.0) spectrum.eigenvectors.col(c) *= -1.0;
    }
    return spectrum;
}

EmbeddingMatrix build_embedding(const Spectrum& s, int k) {
    const Eigen::Index n = s.eigenvalues.size();
    if (k < 1 || k > n) {
        throw ArgumentError("embedding dimension k must be in [1, N], got " + std::to_string(k));
    }
    EmbeddingMatrix embedding;
    embedding.retained_eigenvalues.resize(k);
    for (int c = 0; c < k; ++c) {
        double lambda = s.eigenvalues(c);
        if (lambda < 0.0) {
            lambda = 0.0;
            ++embedding.clamped_count;
        }
        embedding.retained_eigenvalues(c) = lambda;
    }
    embedding.rows = s.eigenvectors.leftCols(k) *
                     embedding.retained_eigenvalues.cwiseSqrt().asDiagonal();
    return embedding;
}

double explained_variance(const Spectrum& s, int k) {
    const Eigen::Index n = s.eigenvalues.size();
    if (k < 1 || k > n) {
        throw ArgumentError("k must be in [1, N], got " + std::to_string(k));
    }
    double kept = 0.0;
    double total = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        double lambda = std::max(s.eigenvalues(c), 0.0);
        total += lambda * lambda;
        if (c < k) kept += lambda * lambda;
    }
    if (total == 0.0) return 1.0;
    return kept / total;
}

}  // namespace labelsphere
