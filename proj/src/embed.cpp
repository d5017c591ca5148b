#include "labelsphere/embed.hpp"

#include <algorithm>
#include <set>

#include "labelsphere/errors.hpp"

namespace labelsphere {

Eigen::VectorXd encode(const std::vector<int>& label_indices, const EmbeddingMatrix& E) {
    if (label_indices.empty()) throw ArgumentError("encode requires a non-empty label set");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(E.k());
    for (int index : label_indices) {
        if (index < 0 || index >= E.n()) {
            throw ArgumentError("label index out of range: " + std::to_string(index));
        }
        sum += E.rows.row(index);
    }
    return sum;
}

double cosine_proximity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        throw DegenerateVectorError("cosine proximity of a zero-norm vector is undefined");
    }
    return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

RankedPredictions decode(const Eigen::VectorXd& v, const EmbeddingMatrix& E, int p) {
    if (p < 1) throw ArgumentError("p must be >= 1");
    if (v.norm() == 0.0) {
        throw DegenerateVectorError("cannot decode a zero-norm vector");
    }
    RankedPredictions out;
    out.items.reserve(static_cast<std::size_t>(E.n()));
    for (Eigen::Index i = 0; i < E.n(); ++i) {
        if (E.rows.row(i).norm() == 0.0) {
            ++out.skipped_zero_rows;
            continue;
        }
        out.items.emplace_back(static_cast<int>(i),
                               cosine_proximity(v, E.rows.row(i).transpose()));
    }
    std::sort(out.items.begin(), out.items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.items.size() > static_cast<std::size_t>(p)) out.items.resize(static_cast<std::size_t>(p));
    return out;
}

RankedPredictions arithmetic_query(const std::vector<int>& plus, const std::vector<int>& minus,
                                   const EmbeddingMatrix& E, int p) {
    if (plus.empty()) throw ArgumentError("arithmetic query requires a non-empty plus set");
    Eigen::VectorXd v = encode(plus, E);
    if (!minus.empty()) v -= encode(minus, E);
    if (v.norm() == 0.0) {
        throw DegenerateVectorError("arithmetic query cancelled to the zero vector");
    }
    std::set<int> query(plus.begin(), plus.end());
    query.insert(minus.begin(), minus.end());
    RankedPredictions full =
        decode(v, E, p + static_cast<int>(query.size()));
    RankedPredictions out;
    out.skipped_zero_rows = full.skipped_zero_rows;
    for (const auto& item : full.items) {
        if (query.count(item.first)) continue;
        out.items.push_back(item);
        if (out.items.size() == static_cast<std::size_t>(p)) break;
    }
    return out;
}

ZeroShotResult zero_shot_insert(const EmbeddingMatrix& E, const Eigen::VectorXd& pmi_with_known) {
    if (pmi_with_known.size() != E.n()) {
        throw ArgumentError("PMI vector length must equal the number of known classes");
    }
    if (pmi_with_known.norm() == 0.0) {
        throw DegenerateStatisticsError("no observed co-occurrence with any known class");
    }
    // Minimum-norm least squares keeps the orthogonal-complement case at x = 0.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(E.rows);
    Eigen::VectorXd x = solver.solve(pmi_with_known);
    ZeroShotResult result;
    result.residual_norm = (E.rows * x - pmi_with_known).norm();
    result.embedding.retained_eigenvalues = E.retained_eigenvalues;
    result.embedding.clamped_count = E.clamped_count;
    result.embedding.rows.resize(E.n() + 1, E.k());
    result.embedding.rows.topRows(E.n()) = E.rows;
    result.embedding.rows.row(E.n()) = x.transpose();
    return result;
}

}  // namespace labelsphere
