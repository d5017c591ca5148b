// Acceptance suite: one pass/fail line per criterion.
#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "labelsphere/cli.hpp"
#include "labelsphere/embed.hpp"
#include "labelsphere/errors.hpp"
#include "labelsphere/eval.hpp"
#include "labelsphere/factorize.hpp"
#include "labelsphere/io.hpp"
#include "labelsphere/pmi.hpp"
#include "labelsphere/trainer.hpp"
#include "oracles.hpp"

using namespace labelsphere;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool passed, const std::string& detail = "") {
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!passed) ++failures;
}

// --- 1. PMI oracle equivalence -------------------------------------------

bool pmi_oracle_equivalence() {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 18);     // N <= 20
        const int m = 20 + static_cast<int>(rng() % 181);   // |D| <= 200
        auto records = oracles::random_corpus(n, m, rng);
        auto vocab = build_vocab(records, 1);
        auto stats = count_cooccurrences(records, vocab);
        for (bool positive : {true, false}) {
            PmiOptions options;
            options.mode = positive ? PmiMode::Positive : PmiMode::Raw;
            PmiMatrix pmi = compute_pmi(stats, options);
            Eigen::MatrixXd expected =
                oracles::dense_pmi_oracle(records, vocab.labels(), positive, 0.0);
            for (std::size_t i = 0; i < vocab.size(); ++i) {
                for (std::size_t j = 0; j < vocab.size(); ++j) {
                    const double got = pmi.entry(static_cast<int>(i), static_cast<int>(j));
                    if (std::abs(got - expected(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(j))) > 1e-12) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

// --- 2. Factorization reconstruction --------------------------------------

bool factorization_reconstruction() {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 10 + static_cast<int>(rng() % 41);  // N <= 50
        auto records = oracles::random_corpus(n, 150, rng);
        auto vocab = build_vocab(records, 1);
        PmiMatrix pmi = compute_pmi(count_cooccurrences(records, vocab));
        const int dim = static_cast<int>(vocab.size());
        Spectrum spectrum = eigendecompose(pmi);

        // Clamped reconstruction PMI+.
        Eigen::VectorXd clamped = spectrum.eigenvalues.cwiseMax(0.0);
        Eigen::MatrixXd pmi_plus =
            spectrum.eigenvectors * clamped.asDiagonal() * spectrum.eigenvectors.transpose();

        EmbeddingMatrix full = build_embedding(spectrum, dim);
        const double full_error = (full.rows * full.rows.transpose() - pmi_plus).norm();
        if (full_error / pmi_plus.norm() > 1e-8) return false;

        const double total = pmi_plus.squaredNorm();
        for (int k : {1, dim / 4 + 1, dim / 2 + 1, (3 * dim) / 4 + 1, dim}) {
            k = std::clamp(k, 1, dim);
            EmbeddingMatrix e = build_embedding(spectrum, k);
            const double truncation = (e.rows * e.rows.transpose() - pmi_plus).squaredNorm();
            double dropped = 0.0;
            for (int c = k; c < dim; ++c) {
                const double lambda = std::max(spectrum.eigenvalues(c), 0.0);
                dropped += lambda * lambda;
            }
            if (std::abs(truncation - dropped) > 1e-6 * std::max(total, 1.0)) return false;
        }
    }
    return true;
}

// --- 3. Round-trip retrieval -----------------------------------------------

bool round_trip_retrieval() {
    std::mt19937_64 rng(303);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 10 + static_cast<int>(rng() % 91);  // N <= 100
        const int k = 4 + static_cast<int>(rng() % 8);
        EmbeddingMatrix e;
        e.rows.resize(n, k);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < k; ++c) e.rows(i, c) = gauss(rng);
        e.retained_eigenvalues = Eigen::VectorXd::Ones(k);
        if (trial % 3 == 0) e.rows.row(n / 2).setZero();
        if (trial % 4 == 0) e.rows.row(1) = 2.0 * e.rows.row(0);  // positive colinear pair

        for (int i = 0; i < n; ++i) {
            if (e.rows.row(i).norm() == 0.0) continue;
            bool colinear = false;
            for (int j = 0; j < n && !colinear; ++j) {
                if (j == i || e.rows.row(j).norm() == 0.0) continue;
                if (cosine_proximity(e.rows.row(i).transpose(), e.rows.row(j).transpose()) >
                    1.0 - 1e-9) {
                    colinear = true;
                }
            }
            if (colinear) continue;
            RankedPredictions top = decode(encode({i}, e), e, 1);
            if (top.items.empty() || top.items[0].first != i) return false;
        }

        // Full decode against the exhaustive-sort oracle, ties included.
        Eigen::VectorXd v(k);
        for (int c = 0; c < k; ++c) v(c) = gauss(rng);
        RankedPredictions got = decode(v, e, n);
        std::vector<std::pair<int, double>> expected;
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd row = e.rows.row(i).transpose();
            if (row.norm() == 0.0) continue;
            expected.emplace_back(i, std::clamp(v.dot(row) / (v.norm() * row.norm()), -1.0, 1.0));
        }
        std::stable_sort(expected.begin(), expected.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        if (got.items.size() != expected.size()) return false;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (got.items[i].first != expected[i].first) return false;
            if (got.items[i].second != expected[i].second) return false;
        }
    }
    return true;
}

// --- 4. Gradient checks ------------------------------------------------------

bool gradient_checks() {
    std::mt19937_64 rng(404);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::bernoulli_distribution coin(0.35);
    auto random_vec = [&](int dim) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
        return v;
    };
    for (int probe = 0; probe < 120; ++probe) {
        Eigen::VectorXd target = random_vec(6);
        Eigen::VectorXd predicted = random_vec(6);
        Eigen::VectorXd analytic = cosine_loss_grad(target, predicted);
        Eigen::VectorXd numeric = oracles::finite_difference_gradient(
            [&](const Eigen::VectorXd& x) { return cosine_loss(target, x); }, predicted, 1e-6);
        if ((analytic - numeric).norm() / std::max(numeric.norm(), 1e-12) > 1e-5) return false;
        if (std::abs(analytic.dot(predicted)) > 1e-10) return false;
    }
    for (int probe = 0; probe < 120; ++probe) {
        Eigen::VectorXd targets(10);
        for (int i = 0; i < 10; ++i) targets(i) = coin(rng) ? 1.0 : 0.0;
        Eigen::VectorXd logits = random_vec(10);
        Eigen::VectorXd analytic = sigmoid_cross_entropy_grad(targets, logits);
        Eigen::VectorXd numeric = oracles::finite_difference_gradient(
            [&](const Eigen::VectorXd& z) { return sigmoid_cross_entropy_loss(targets, z); },
            logits, 1e-6);
        if ((analytic - numeric).norm() / std::max(numeric.norm(), 1e-12) > 1e-5) return false;
    }
    return true;
}

// --- 5. Metric oracle ---------------------------------------------------------

bool metric_oracle() {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> weight(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int num_classes = 3 + static_cast<int>(rng() % 8);
        const int num_instances = 5 + static_cast<int>(rng() % 26);
        std::uniform_int_distribution<int> pick(0, num_classes - 1);
        std::vector<EvalInstance> instances;
        for (int m = 0; m < num_instances; ++m) {
            EvalInstance instance;
            std::set<int> predicted;
            const int preds = static_cast<int>(rng() % (num_classes + 1));
            while (static_cast<int>(predicted.size()) < preds) {
                int label = pick(rng);
                if (predicted.insert(label).second) instance.predictions.push_back(label);
            }
            const int truths = static_cast<int>(rng() % (num_classes + 1));
            for (int t = 0; t < truths; ++t) instance.truth.insert(pick(rng));
            instances.push_back(std::move(instance));
        }
        ClassWeights weights;
        weights.cap_min = 0.1;
        weights.cap_max = 10.0;
        for (int n = 0; n < num_classes; ++n) weights.weights.push_back(weight(rng));
        EvalResult result = weighted_map_at_100(instances, weights);
        const double expected = oracles::brute_force_weighted_map(instances, weights.weights);
        if (std::abs(result.weighted_map - expected) > 1e-12) return false;

        ClassWeights doubled = weights;
        for (double& w : doubled.weights) w *= 2.0;
        if (weighted_map_at_100(instances, doubled).weighted_map != 2.0 * result.weighted_map) {
            return false;
        }
    }
    return true;
}

// --- 6. Continuity property ---------------------------------------------------

bool continuity_property(std::string& detail) {
    SyntheticConfig config;
    config.num_clusters = 6;
    config.labels_per_cluster = 3;
    config.noise_rate = 0.02;
    config.num_instances = 2000;
    SyntheticDataset dataset = generate_synthetic(config, 606);
    CooccurrenceStats stats(static_cast<std::size_t>(dataset.num_labels()));
    for (const auto& labelset : dataset.labelsets) stats.add_instance(labelset);
    EmbeddingMatrix embedding =
        build_embedding(eigendecompose(compute_pmi(stats)), dataset.num_labels());
    ContinuityReport probe = continuity_probe(embedding, {0, 1, 2}, 0.8);
    std::ostringstream text;
    text << "ce_delta=" << probe.cross_entropy_delta << " cosine_delta=" << probe.cosine_delta;
    detail = text.str();
    if (std::abs(probe.cross_entropy_delta - 0.30) > 0.05) return false;  // expected ~30%
    return probe.cosine_delta < 0.5 * probe.cross_entropy_delta;
}

// --- 7. Zero-shot hold-out -----------------------------------------------------

bool zero_shot_holdout(std::string& detail) {
    int jaccard_passes = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticConfig config;
        config.num_clusters = 4;
        config.labels_per_cluster = 10;  // N = 40
        config.noise_rate = 0.05;
        config.num_instances = 1500;
        SyntheticDataset dataset = generate_synthetic(config, seed);
        const int n = dataset.num_labels();
        const int held_out = 5;  // a mid-cluster label

        CooccurrenceStats full_stats(static_cast<std::size_t>(n));
        for (const auto& labelset : dataset.labelsets) full_stats.add_instance(labelset);
        PmiMatrix full_pmi = compute_pmi(full_stats);
        EmbeddingMatrix full = build_embedding(eigendecompose(full_pmi), n);

        // Reduced corpus: drop the held-out class everywhere.
        CooccurrenceStats reduced_stats(static_cast<std::size_t>(n - 1));
        auto reduced_index = [&](int label) { return label < held_out ? label : label - 1; };
        for (const auto& labelset : dataset.labelsets) {
            std::vector<int> reduced;
            for (int label : labelset) {
                if (label != held_out) reduced.push_back(reduced_index(label));
            }
            reduced_stats.add_instance(reduced);
        }
        EmbeddingMatrix reduced =
            build_embedding(eigendecompose(compute_pmi(reduced_stats)), n - 1);

        // Measured PMI column of the held-out class against the known classes.
        Eigen::VectorXd pmi_column = Eigen::VectorXd::Zero(n - 1);
        for (int j = 0; j < n; ++j) {
            if (j == held_out) continue;
            const double value = full_pmi.entry(held_out, j);
            pmi_column(reduced_index(j)) = value;
        }
        ZeroShotResult inserted = zero_shot_insert(reduced, pmi_column);

        auto top5 = [](const EmbeddingMatrix& e, int row, const std::function<int(int)>& remap) {
            RankedPredictions ranked =
                arithmetic_query({row}, {}, e, 5);
            std::set<int> labels;
            for (const auto& item : ranked.items) labels.insert(remap(item.first));
            return labels;
        };
        std::set<int> inserted_neighbors = top5(
            inserted.embedding, n - 1,
            [&](int reduced_label) { return reduced_label < held_out ? reduced_label
                                                                     : reduced_label + 1; });
        std::set<int> full_neighbors_all = top5(full, held_out, [](int label) { return label; });

        std::vector<int> overlap;
        std::set_intersection(inserted_neighbors.begin(), inserted_neighbors.end(),
                              full_neighbors_all.begin(), full_neighbors_all.end(),
                              std::back_inserter(overlap));
        std::set<int> unioned = inserted_neighbors;
        unioned.insert(full_neighbors_all.begin(), full_neighbors_all.end());
        const double jaccard =
            static_cast<double>(overlap.size()) / static_cast<double>(unioned.size());
        if (jaccard >= 0.6) ++jaccard_passes;

        // Re-inserting a present class reproduces its row (untruncated).
        Eigen::VectorXd present_column = full.rows * full.rows.row(held_out).transpose();
        ZeroShotResult reinserted = zero_shot_insert(full, present_column);
        if ((reinserted.embedding.rows.row(n) - full.rows.row(held_out)).norm() > 1e-6) {
            detail = "present-class row not reproduced";
            return false;
        }
    }
    detail = "jaccard>=0.6 in " + std::to_string(jaccard_passes) + "/10 seeds";
    return jaccard_passes == 10;
}

// --- 8. Fig. 1 directional analog ----------------------------------------------

bool convergence_analog(std::string& detail) {
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TrainDemoConfig config;
        config.synthetic.num_clusters = 20;
        config.synthetic.labels_per_cluster = 5;
        config.synthetic.noise_rate = 0.1;
        config.synthetic.num_instances = 2000;
        config.optimizer.steps = 1200;
        config.optimizer.eval_every = 100;
        config.k = 24;
        config.seed = seed;
        std::ostringstream sink;
        TrainDemoSummary summary = cmd_train_demo(config, sink);
        if (summary.cosine_steps_to_baseline >= 0 &&
            summary.cosine_steps_to_baseline < summary.logistic_steps_to_baseline) {
            ++wins;
        }
    }
    detail = "cosine faster in " + std::to_string(wins) + "/10 seeds";
    return wins >= 8;
}

// --- 9. Concept arithmetic -------------------------------------------------------

bool concept_arithmetic() {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(900 + seed);
        // Labels: 0=A, 1=B, 2=C (co-occurs with both), 3=distractor.
        CooccurrenceStats stats(4);
        const int block = 30 + static_cast<int>(rng() % 20);
        for (int r = 0; r < block; ++r) stats.add_instance({0, 2});
        for (int r = 0; r < block; ++r) stats.add_instance({1, 2});
        for (int r = 0; r < block / 2; ++r) stats.add_instance({0});
        for (int r = 0; r < block / 2; ++r) stats.add_instance({1});
        for (int r = 0; r < block; ++r) stats.add_instance({3});
        EmbeddingMatrix e = build_embedding(eigendecompose(compute_pmi(stats)), 4);
        RankedPredictions out = arithmetic_query({0, 1}, {}, e, 2);
        if (out.items.empty() || out.items[0].first != 2) return false;
    }
    return true;
}

// --- 10. Determinism --------------------------------------------------------------

bool determinism() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "labelsphere_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::mt19937_64 rng(1001);
    auto records = oracles::random_corpus(12, 120, rng);
    std::ostringstream corpus;
    write_annotations(corpus, records);
    write_file((dir / "corpus.tsv").string(), corpus.str());

    auto build_once = [&](const std::string& suffix) {
        PipelineConfig config;
        config.annotations_path = (dir / "corpus.tsv").string();
        config.vocab_path = (dir / ("vocab" + suffix)).string();
        config.embeddings_path = (dir / ("embedding" + suffix)).string();
        std::ostringstream diagnostics;
        cmd_build(config, "", diagnostics);
        return read_file(config.embeddings_path) + "|" + read_file(config.vocab_path);
    };
    if (build_once("_a") != build_once("_b")) return false;

    auto demo_once = [&](const std::string& suffix) {
        TrainDemoConfig config;
        config.synthetic.num_instances = 400;
        config.synthetic.num_clusters = 4;
        config.optimizer.steps = 100;
        config.optimizer.eval_every = 50;
        config.seed = 9;
        config.cosine_csv_path = (dir / ("cosine" + suffix)).string();
        config.logistic_csv_path = (dir / ("logistic" + suffix)).string();
        config.comparison_csv_path = (dir / ("comparison" + suffix)).string();
        std::ostringstream out;
        cmd_train_demo(config, out);
        return read_file(config.cosine_csv_path) + "|" + read_file(config.logistic_csv_path) +
               "|" + read_file(config.comparison_csv_path) + "|" + out.str();
    };
    const bool ok = demo_once("_a") == demo_once("_b");
    fs::remove_all(dir);
    return ok;
}

}  // namespace

int main() {
    std::string detail;

    report(1, "PMI oracle equivalence", pmi_oracle_equivalence());
    report(2, "Factorization reconstruction + truncation identity",
           factorization_reconstruction());
    report(3, "Round-trip retrieval vs exhaustive-sort oracle", round_trip_retrieval());
    report(4, "Gradient checks vs central finite differences", gradient_checks());
    report(5, "Weighted MAP@100 oracle + weight linearity", metric_oracle());

    detail.clear();
    report(6, "Continuity: cosine delta < 0.5 x cross-entropy delta",
           continuity_property(detail), detail);

    detail.clear();
    report(7, "Zero-shot hold-out neighbor overlap", zero_shot_holdout(detail), detail);

    detail.clear();
    report(8, "Convergence analog: cosine arm reaches baseline MAP first",
           convergence_analog(detail), detail);

    report(9, "Concept arithmetic: A + B retrieves the shared co-occurring label",
           concept_arithmetic());
    report(10, "Determinism: byte-identical build and train-demo outputs", determinism());

    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
