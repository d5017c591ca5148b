#include "labelsphere/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "labelsphere/errors.hpp"

namespace labelsphere {

namespace {

void validate_config(const SyntheticConfig& c) {
    if (c.num_clusters < 1) throw ArgumentError("cluster count must be >= 1");
    if (c.labels_per_cluster < 2) throw ArgumentError("labels per cluster must be >= 2");
    if (c.cooccur_strength <= 0.0 || c.cooccur_strength > 1.0) {
        throw ArgumentError("co-occurrence strength must be in (0, 1]");
    }
    if (c.noise_rate < 0.0 || c.noise_rate >= 1.0) {
        throw ArgumentError("noise rate must be in [0, 1)");
    }
    if (c.num_instances < 1) throw ArgumentError("instance count must be >= 1");
    if (c.feature_dim < 1) throw ArgumentError("feature dim must be >= 1");
    if (c.feature_noise < 0.0) throw ArgumentError("feature noise must be >= 0");
}

}  // namespace

SyntheticDataset generate_synthetic(const SyntheticConfig& config, std::uint64_t seed) {
    validate_config(config);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> pick_cluster(0, config.num_clusters - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int num_labels = config.num_clusters * config.labels_per_cluster;
    Eigen::MatrixXd centroids(config.num_clusters, config.feature_dim);
    for (int c = 0; c < config.num_clusters; ++c) {
        for (int f = 0; f < config.feature_dim; ++f) {
            centroids(c, f) = config.cluster_spread * gauss(rng);
        }
    }

    SyntheticDataset dataset;
    dataset.config = config;
    dataset.seed = seed;
    dataset.features.resize(config.num_instances, config.feature_dim);
    dataset.labelsets.reserve(static_cast<std::size_t>(config.num_instances));

    const double activation = config.cooccur_strength * (1.0 - config.noise_rate);
    for (int m = 0; m < config.num_instances; ++m) {
        const int cluster = pick_cluster(rng);
        std::set<int> labels;
        while (labels.empty()) {  // resample until non-empty, per the generator contract
            for (int l = 0; l < config.labels_per_cluster; ++l) {
                if (unit(rng) < activation) {
                    labels.insert(cluster * config.labels_per_cluster + l);
                }
            }
        }
        if (config.num_clusters > 1) {
            std::uniform_int_distribution<int> pick_label(0, num_labels - 1);
            for (int l = 0; l < config.labels_per_cluster; ++l) {
                if (unit(rng) < config.noise_rate) {
                    int distractor = pick_label(rng);
                    if (distractor / config.labels_per_cluster != cluster) {
                        labels.insert(distractor);
                    }
                }
            }
        }
        dataset.labelsets.emplace_back(labels.begin(), labels.end());
        for (int f = 0; f < config.feature_dim; ++f) {
            dataset.features(m, f) = centroids(cluster, f) + config.feature_noise * gauss(rng);
        }
    }
    return dataset;
}

double cosine_loss(const Eigen::VectorXd& target, const Eigen::VectorXd& predicted) {
    return -cosine_proximity(target, predicted);
}

Eigen::VectorXd cosine_loss_grad(const Eigen::VectorXd& target, const Eigen::VectorXd& predicted) {
    const double nt = target.norm();
    const double np = predicted.norm();
    if (nt == 0.0 || np == 0.0) {
        throw DegenerateVectorError("cosine loss gradient of a zero-norm vector is undefined");
    }
    const double dot = target.dot(predicted);
    return -(target / (nt * np) - dot * predicted / (nt * np * np * np));
}

double sigmoid_cross_entropy_loss(const Eigen::VectorXd& targets, const Eigen::VectorXd& logits) {
    if (targets.size() != logits.size()) throw ArgumentError("target/logit size mismatch");
    double total = 0.0;
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        const double z = logits(i);
        const double t = targets(i);
        // max(z,0) - z*t + log(1 + exp(-|z|)), stable for large |z|.
        total += std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
    }
    return total / static_cast<double>(logits.size());
}

Eigen::VectorXd sigmoid_cross_entropy_grad(const Eigen::VectorXd& targets,
                                           const Eigen::VectorXd& logits) {
    if (targets.size() != logits.size()) throw ArgumentError("target/logit size mismatch");
    Eigen::VectorXd grad(logits.size());
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        const double sigma = 1.0 / (1.0 + std::exp(-logits(i)));
        grad(i) = (sigma - targets(i)) / static_cast<double>(logits.size());
    }
    return grad;
}

LinearModel init_linear_model(int feature_dim, int output_dim, double init_scale,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, init_scale);
    LinearModel model;
    model.weights.resize(feature_dim, output_dim);
    for (int f = 0; f < feature_dim; ++f) {
        for (int o = 0; o < output_dim; ++o) model.weights(f, o) = gauss(rng);
    }
    model.bias = Eigen::VectorXd::Zero(output_dim);
    return model;
}

namespace {

std::vector<int> rank_logits_top100(const Eigen::VectorXd& logits) {
    std::vector<int> order(static_cast<std::size_t>(logits.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (logits(a) != logits(b)) return logits(a) > logits(b);
        return a < b;
    });
    if (order.size() > 100) order.resize(100);
    return order;
}

struct ArmContext {
    const SyntheticDataset& dataset;
    const EmbeddingMatrix* embedding;
    LossKind kind;
    std::vector<Eigen::VectorXd> targets;  // per instance: embedding or binary vector
};

double instance_loss(const ArmContext& ctx, const LinearModel& model, int index) {
    Eigen::VectorXd out = model.predict(ctx.dataset.features.row(index).transpose());
    if (ctx.kind == LossKind::Cosine) {
        return cosine_loss(ctx.targets[static_cast<std::size_t>(index)], out);
    }
    return sigmoid_cross_entropy_loss(ctx.targets[static_cast<std::size_t>(index)], out);
}

double evaluate_map(const ArmContext& ctx, const LinearModel& model,
                    const std::vector<int>& holdout, const ClassWeights& weights) {
    std::vector<EvalInstance> instances;
    instances.reserve(holdout.size());
    for (int index : holdout) {
        Eigen::VectorXd out = model.predict(ctx.dataset.features.row(index).transpose());
        EvalInstance instance;
        if (ctx.kind == LossKind::Cosine) {
            if (out.norm() > 0.0) {
                RankedPredictions ranked = decode(out, *ctx.embedding, 100);
                for (const auto& item : ranked.items) instance.predictions.push_back(item.first);
            }
        } else {
            instance.predictions = rank_logits_top100(out);
        }
        const auto& truth = ctx.dataset.labelsets[static_cast<std::size_t>(index)];
        instance.truth.insert(truth.begin(), truth.end());
        instances.push_back(std::move(instance));
    }
    return weighted_map_at_100(instances, weights).weighted_map;
}

}  // namespace

TrainHistory train(LinearModel& model, const SyntheticDataset& dataset,
                   const EmbeddingMatrix* embedding, LossKind kind,
                   const OptimizerConfig& optimizer) {
    if (optimizer.steps < 0) throw ArgumentError("steps must be >= 0");
    if (optimizer.batch_size < 1) throw ArgumentError("batch size must be >= 1");
    if (optimizer.eval_every < 1) throw ArgumentError("eval cadence must be >= 1");
    if (optimizer.holdout_fraction <= 0.0 || optimizer.holdout_fraction >= 1.0) {
        throw ArgumentError("holdout fraction must be in (0, 1)");
    }
    if (kind == LossKind::Cosine && embedding == nullptr) {
        throw ArgumentError("cosine training requires an embedding matrix");
    }
    const int num_instances = static_cast<int>(dataset.labelsets.size());
    const int num_labels = dataset.num_labels();

    std::mt19937_64 rng(optimizer.seed);
    std::vector<int> order(static_cast<std::size_t>(num_instances));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const int holdout_size = std::max(
        1, static_cast<int>(optimizer.holdout_fraction * num_instances));
    if (holdout_size >= num_instances) throw ArgumentError("holdout leaves no training data");
    std::vector<int> holdout(order.begin(), order.begin() + holdout_size);
    std::vector<int> training(order.begin() + holdout_size, order.end());

    ArmContext ctx{dataset, embedding, kind, {}};
    ctx.targets.reserve(static_cast<std::size_t>(num_instances));
    for (int m = 0; m < num_instances; ++m) {
        if (kind == LossKind::Cosine) {
            Eigen::VectorXd target =
                encode(dataset.labelsets[static_cast<std::size_t>(m)], *embedding);
            if (target.norm() == 0.0) {
                // Happens when the rank is too low to give every co-occurrence
                // cluster spectral mass; the cosine target is then undefined.
                throw DegenerateVectorError(
                    "instance " + std::to_string(m) +
                    " encodes to a zero vector; increase the embedding rank");
            }
            ctx.targets.push_back(std::move(target));
        } else {
            Eigen::VectorXd binary = Eigen::VectorXd::Zero(num_labels);
            for (int l : dataset.labelsets[static_cast<std::size_t>(m)]) binary(l) = 1.0;
            ctx.targets.push_back(std::move(binary));
        }
    }

    std::vector<std::int64_t> frequency(static_cast<std::size_t>(num_labels), 0);
    for (int index : training) {
        for (int l : dataset.labelsets[static_cast<std::size_t>(index)]) {
            ++frequency[static_cast<std::size_t>(l)];
        }
    }
    ClassWeights weights =
        compute_class_weights(frequency, 0.1, 10.0, static_cast<double>(num_labels));

    auto mean_training_loss = [&](void) {
        double total = 0.0;
        for (int index : training) total += instance_loss(ctx, model, index);
        return total / static_cast<double>(training.size());
    };

    TrainHistory history;
    auto record = [&](long step) {
        history.records.push_back(
            {step, mean_training_loss(), evaluate_map(ctx, model, holdout, weights)});
    };
    record(0);

    std::vector<int> epoch = training;
    std::size_t cursor = epoch.size();  // force a shuffle before the first batch
    for (long step = 1; step <= optimizer.steps; ++step) {
        Eigen::MatrixXd grad_w = Eigen::MatrixXd::Zero(model.weights.rows(), model.weights.cols());
        Eigen::VectorXd grad_b = Eigen::VectorXd::Zero(model.bias.size());
        double batch_loss = 0.0;
        for (int b = 0; b < optimizer.batch_size; ++b) {
            if (cursor >= epoch.size()) {
                std::shuffle(epoch.begin(), epoch.end(), rng);
                cursor = 0;
            }
            const int index = epoch[cursor++];
            const Eigen::VectorXd x = dataset.features.row(index).transpose();
            const Eigen::VectorXd out = model.predict(x);
            const Eigen::VectorXd& target = ctx.targets[static_cast<std::size_t>(index)];
            Eigen::VectorXd out_grad;
            if (kind == LossKind::Cosine) {
                batch_loss += cosine_loss(target, out);
                out_grad = cosine_loss_grad(target, out);
            } else {
                batch_loss += sigmoid_cross_entropy_loss(target, out);
                out_grad = sigmoid_cross_entropy_grad(target, out);
            }
            grad_w += x * out_grad.transpose();
            grad_b += out_grad;
        }
        batch_loss /= optimizer.batch_size;
        if (!std::isfinite(batch_loss)) {
            throw TrainingFailureError("non-finite training loss", step);
        }
        model.weights -= (optimizer.learning_rate / optimizer.batch_size) * grad_w;
        model.bias -= (optimizer.learning_rate / optimizer.batch_size) * grad_b;
        if (step % optimizer.eval_every == 0 || step == optimizer.steps) {
            record(step);
        }
    }
    return history;
}

ContinuityReport continuity_probe(const EmbeddingMatrix& E, const std::array<int, 3>& triple,
                                  double proximity_threshold) {
    for (int index : triple) {
        if (index < 0 || index >= E.n()) throw ArgumentError("triple index out of range");
        if (E.rows.row(index).norm() == 0.0) {
            throw InapplicableProbeError("triple contains a zero embedding row");
        }
    }
    ContinuityReport report{};
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXd a = E.rows.row(triple[static_cast<std::size_t>(i)]).transpose();
        const Eigen::VectorXd b =
            E.rows.row(triple[static_cast<std::size_t>((i + 1) % 3)]).transpose();
        report.pairwise_proximity[static_cast<std::size_t>(i)] = cosine_proximity(a, b);
        if (report.pairwise_proximity[static_cast<std::size_t>(i)] < proximity_threshold) {
            throw InapplicableProbeError("triple is not tightly co-occurring under threshold " +
                                         std::to_string(proximity_threshold));
        }
    }

    // Cross-entropy side: a model predicting equal presence probability for
    // all three classes splits the annotated-label loss mass evenly, so
    // dropping one of the three labels removes a third of it.
    const double p = 0.5;
    const double ce_full = 3.0 * -std::log(p);
    const double ce_dropped = 2.0 * -std::log(p);
    report.cross_entropy_delta = (ce_full - ce_dropped) / ce_full;

    // Cosine side: prediction at the spherical centroid of the triple.
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(E.k());
    Eigen::VectorXd full_target = Eigen::VectorXd::Zero(E.k());
    for (int index : triple) {
        const Eigen::VectorXd row = E.rows.row(index).transpose();
        centroid += row / row.norm();
        full_target += row;
    }
    const double loss_full = cosine_loss(full_target, centroid);
    double worst = 0.0;
    for (int index : triple) {
        const Eigen::VectorXd dropped = full_target - E.rows.row(index).transpose();
        if (dropped.norm() == 0.0) {
            throw InapplicableProbeError("dropping a label cancels the target entirely");
        }
        const double delta =
            std::abs(cosine_loss(dropped, centroid) - loss_full) / std::abs(loss_full);
        worst = std::max(worst, delta);
    }
    report.cosine_delta = worst;
    report.cosine_smoother = report.cosine_delta < report.cross_entropy_delta;
    return report;
}

}  // namespace labelsphere
