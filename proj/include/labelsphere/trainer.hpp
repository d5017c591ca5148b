#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "labelsphere/embed.hpp"
#include "labelsphere/eval.hpp"

namespace labelsphere {

struct SyntheticConfig {
    int num_clusters = 20;
    int labels_per_cluster = 5;
    double cooccur_strength = 1.0;  // scales the cluster-label activation probability
    double noise_rate = 0.1;
    int num_instances = 2000;
    int feature_dim = 16;
    double feature_noise = 0.5;
    double cluster_spread = 3.0;  // centroid scale, controls cluster separation
};

/// Clustered multi-label corpus: instances drawn from a cluster activate that
/// cluster's labels plus distractors, features sit near the cluster centroid.
struct SyntheticDataset {
    Eigen::MatrixXd features;                 // M x F
    std::vector<std::vector<int>> labelsets;  // sorted, unique, non-empty
    SyntheticConfig config;
    std::uint64_t seed = 0;

    int num_labels() const { return config.num_clusters * config.labels_per_cluster; }
};

SyntheticDataset generate_synthetic(const SyntheticConfig& config, std::uint64_t seed);

/// Negated cosine proximity; the training loss for the embedding arm.
double cosine_loss(const Eigen::VectorXd& target, const Eigen::VectorXd& predicted);

/// Gradient of cosine_loss w.r.t. the prediction. Orthogonal to the
/// prediction since the loss is scale-invariant in it.
Eigen::VectorXd cosine_loss_grad(const Eigen::VectorXd& target, const Eigen::VectorXd& predicted);

/// Mean over classes of the numerically stable binary cross-entropy between
/// the binary target vector and sigmoid(logits).
double sigmoid_cross_entropy_loss(const Eigen::VectorXd& targets, const Eigen::VectorXd& logits);

/// Gradient of the mean sigmoid cross-entropy w.r.t. the logits:
/// (sigmoid(z) - t) / N.
Eigen::VectorXd sigmoid_cross_entropy_grad(const Eigen::VectorXd& targets,
                                           const Eigen::VectorXd& logits);

enum class LossKind { Cosine, Logistic };

/// Affine map from features to either an embedding (dim k) or logits (dim N).
struct LinearModel {
    Eigen::MatrixXd weights;  // F x output_dim
    Eigen::VectorXd bias;     // output_dim

    Eigen::VectorXd predict(const Eigen::VectorXd& features) const {
        return weights.transpose() * features + bias;
    }
};

LinearModel init_linear_model(int feature_dim, int output_dim, double init_scale,
                              std::uint64_t seed);

struct OptimizerConfig {
    int steps = 1500;
    int batch_size = 32;
    double learning_rate = 0.05;
    int eval_every = 100;
    double holdout_fraction = 0.2;
    std::uint64_t seed = 1;
};

struct TrainRecord {
    long step;
    double loss;          // mean training loss at this step
    double weighted_map;  // held-out class-weighted MAP@100
};

struct TrainHistory {
    std::vector<TrainRecord> records;
};

/// Mini-batch gradient descent with seed-deterministic shuffling; records the
/// held-out weighted MAP@100 at the configured cadence (and at steps 0 and
/// `steps`). For the cosine arm `embedding` must be aligned with the
/// dataset's label indices. Throws TrainingFailureError on non-finite loss.
TrainHistory train(LinearModel& model, const SyntheticDataset& dataset,
                   const EmbeddingMatrix* embedding, LossKind kind,
                   const OptimizerConfig& optimizer);

struct ContinuityReport {
    double cross_entropy_delta;            // relative change from dropping one of three labels
    double cosine_delta;                    // worst-case over the three label drops
    std::array<double, 3> pairwise_proximity;
    bool cosine_smoother;                   // cosine_delta < cross_entropy_delta
};

/// Compares the loss disturbance caused by dropping one label of a tightly
/// co-occurring triple: binary cross-entropy against an equal-presence
/// prediction vs. cosine loss against the spherical centroid of the triple.
/// Throws InapplicableProbeError unless all pairwise proximities reach
/// `proximity_threshold`.
ContinuityReport continuity_probe(const EmbeddingMatrix& E, const std::array<int, 3>& triple,
                                  double proximity_threshold = 0.8);

}  // namespace labelsphere
