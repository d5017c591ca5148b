#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "labelsphere/cli.hpp"
#include "labelsphere/errors.hpp"
#include "labelsphere/io.hpp"

namespace {

using namespace labelsphere;

PipelineConfig load_config_if_any(const std::string& path) {
    if (path.empty()) return {};
    return PipelineConfig::from_json(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"labelsphere: PMI-factorized label embeddings"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    // build
    auto* build = app.add_subcommand("build", "build vocab + embedding from annotations");
    std::string annotations, vocab_out, embeddings, pmi_dump;
    int k = 0;
    long long min_count = 1;
    std::string pmi_mode = "positive";
    double alpha = 0.0;
    bool zero_diagonal = false;
    build->add_option("--annotations", annotations, "annotation TSV");
    build->add_option("--vocab", vocab_out, "vocabulary output path");
    build->add_option("--embeddings", embeddings, "embedding output path");
    build->add_option("--k", k, "embedding dimension (0 = min(N, 256))");
    build->add_option("--min-count", min_count, "minimum label occurrence count");
    build->add_option("--pmi-mode", pmi_mode, "positive|raw")
        ->check(CLI::IsMember({"positive", "raw"}));
    build->add_option("--alpha", alpha, "additive count smoothing");
    build->add_flag("--zero-diagonal", zero_diagonal, "drop PMI diagonal entries");
    build->add_option("--pmi-dump", pmi_dump, "optional PMI dump path");

    // query
    auto* query = app.add_subcommand("query", "nearest / encode-decode / arithmetic queries");
    std::string q_embeddings, q_mode = "nearest";
    std::vector<std::string> q_labels, q_minus;
    int p = 100;
    query->add_option("--embeddings", q_embeddings, "embedding file")->required();
    query->add_option("--mode", q_mode, "nearest|encode-decode|arithmetic")
        ->check(CLI::IsMember({"nearest", "encode-decode", "arithmetic"}));
    query->add_option("--labels", q_labels, "query labels (comma separated)")
        ->required()
        ->delimiter(',');
    query->add_option("--minus", q_minus, "labels to subtract (arithmetic mode)")->delimiter(',');
    query->add_option("--p", p, "number of ranked results");

    // eval
    auto* eval = app.add_subcommand("eval", "class-weighted MAP@100");
    std::string e_predictions, e_truth, e_weights;
    double cap_min = 0.1, cap_max = 10.0;
    bool per_class = false;
    eval->add_option("--predictions", e_predictions, "ranked prediction TSV")->required();
    eval->add_option("--truth", e_truth, "ground-truth TSV")->required();
    eval->add_option("--weights", e_weights, "label<TAB>frequency file")->required();
    eval->add_option("--cap-min", cap_min, "weight lower cap");
    eval->add_option("--cap-max", cap_max, "weight upper cap");
    eval->add_flag("--per-class", per_class, "include per-class AP breakdown");

    // zero-shot
    auto* zero_shot = app.add_subcommand("zero-shot", "insert an unseen class from co-occurrences");
    std::string z_embeddings, z_annotations, z_label, z_out;
    zero_shot->add_option("--embeddings", z_embeddings, "embedding file")->required();
    zero_shot->add_option("--annotations", z_annotations, "co-occurrence annotations")->required();
    zero_shot->add_option("--label", z_label, "name of the new class")->required();
    zero_shot->add_option("--out", z_out, "updated embedding output path")->required();

    // train-demo
    auto* demo = app.add_subcommand("train-demo", "cosine regression vs logistic regression");
    TrainDemoConfig demo_config;
    unsigned long long demo_seed = 1;
    demo->add_option("--clusters", demo_config.synthetic.num_clusters, "cluster count");
    demo->add_option("--labels-per-cluster", demo_config.synthetic.labels_per_cluster,
                     "labels per cluster");
    demo->add_option("--noise", demo_config.synthetic.noise_rate, "label noise rate");
    demo->add_option("--instances", demo_config.synthetic.num_instances, "instance count");
    demo->add_option("--feature-dim", demo_config.synthetic.feature_dim, "feature dimension");
    demo->add_option("--k", demo_config.k, "embedding dimension");
    demo->add_option("--steps", demo_config.optimizer.steps, "optimizer steps");
    demo->add_option("--batch", demo_config.optimizer.batch_size, "mini-batch size");
    demo->add_option("--lr", demo_config.optimizer.learning_rate, "learning rate");
    demo->add_option("--eval-every", demo_config.optimizer.eval_every, "evaluation cadence");
    demo->add_option("--seed", demo_seed, "RNG seed");
    demo->add_option("--cosine-csv", demo_config.cosine_csv_path, "cosine arm history CSV");
    demo->add_option("--logistic-csv", demo_config.logistic_csv_path, "logistic arm history CSV");
    demo->add_option("--comparison-csv", demo_config.comparison_csv_path,
                     "plot-ready two-arm comparison CSV");

    // stats
    auto* stats = app.add_subcommand("stats", "corpus summary");
    std::string s_annotations;
    long long s_min_count = 1;
    stats->add_option("--annotations", s_annotations, "annotation TSV")->required();
    stats->add_option("--min-count", s_min_count, "minimum label occurrence count");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig config = load_config_if_any(config_path);
        if (*build) {
            if (build->count("--annotations")) config.annotations_path = annotations;
            if (build->count("--vocab")) config.vocab_path = vocab_out;
            if (build->count("--embeddings")) config.embeddings_path = embeddings;
            if (build->count("--k")) config.k = k;
            if (build->count("--min-count")) config.min_count = min_count;
            if (build->count("--pmi-mode")) config.pmi_mode = pmi_mode;
            if (build->count("--alpha")) config.alpha = alpha;
            if (build->count("--zero-diagonal")) config.zero_diagonal = zero_diagonal;
            if (config.annotations_path.empty() || config.embeddings_path.empty()) {
                throw ArgumentError("build requires --annotations and --embeddings");
            }
            cmd_build(config, pmi_dump, std::cerr);
        } else if (*query) {
            QueryMode mode = q_mode == "nearest"         ? QueryMode::Nearest
                             : q_mode == "encode-decode" ? QueryMode::EncodeDecode
                                                         : QueryMode::Arithmetic;
            cmd_query(q_embeddings, mode, q_labels, q_minus, p, std::cout);
        } else if (*eval) {
            cmd_eval(e_predictions, e_truth, e_weights, cap_min, cap_max, per_class, std::cout);
        } else if (*zero_shot) {
            cmd_zero_shot(z_embeddings, z_annotations, z_label, z_out, config, std::cout);
        } else if (*demo) {
            demo_config.seed = demo_seed;
            cmd_train_demo(demo_config, std::cout);
        } else if (*stats) {
            cmd_stats(s_annotations, s_min_count, std::cout);
        }
    } catch (const ArgumentError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}
