#include "labelsphere/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "labelsphere/embed.hpp"
#include "labelsphere/errors.hpp"
#include "labelsphere/io.hpp"

namespace labelsphere {

using nlohmann::json;

std::string PipelineConfig::to_json() const {
    json j;
    j["annotations_path"] = annotations_path;
    j["vocab_path"] = vocab_path;
    j["embeddings_path"] = embeddings_path;
    j["weights_path"] = weights_path;
    j["k"] = k;
    j["min_count"] = min_count;
    j["pmi_mode"] = pmi_mode;
    j["alpha"] = alpha;
    j["zero_diagonal"] = zero_diagonal;
    j["cap_min"] = cap_min;
    j["cap_max"] = cap_max;
    j["p"] = p;
    j["seed"] = seed;
    return j.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    PipelineConfig config;
    config.annotations_path = j.value("annotations_path", config.annotations_path);
    config.vocab_path = j.value("vocab_path", config.vocab_path);
    config.embeddings_path = j.value("embeddings_path", config.embeddings_path);
    config.weights_path = j.value("weights_path", config.weights_path);
    config.k = j.value("k", config.k);
    config.min_count = j.value("min_count", config.min_count);
    config.pmi_mode = j.value("pmi_mode", config.pmi_mode);
    config.alpha = j.value("alpha", config.alpha);
    config.zero_diagonal = j.value("zero_diagonal", config.zero_diagonal);
    config.cap_min = j.value("cap_min", config.cap_min);
    config.cap_max = j.value("cap_max", config.cap_max);
    config.p = j.value("p", config.p);
    config.seed = j.value("seed", config.seed);
    return config;
}

namespace {

PmiOptions pmi_options_from(const PipelineConfig& config) {
    PmiOptions options;
    if (config.pmi_mode == "positive") {
        options.mode = PmiMode::Positive;
    } else if (config.pmi_mode == "raw") {
        options.mode = PmiMode::Raw;
    } else {
        throw ArgumentError("pmi mode must be 'positive' or 'raw', got '" + config.pmi_mode + "'");
    }
    options.alpha = config.alpha;
    options.include_diagonal = !config.zero_diagonal;
    return options;
}

std::vector<RawRecord> load_annotation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open annotation file: " + path);
    return load_annotations(in);
}

LabeledEmbedding load_embedding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open embedding file: " + path);
    return read_embedding(in);
}

void emit_ranked_json(const RankedPredictions& ranked, const std::vector<std::string>& labels,
                      std::ostream& out) {
    for (const auto& [index, proximity] : ranked.items) {
        json line;
        line["label"] = labels.at(static_cast<std::size_t>(index));
        line["proximity"] = proximity;
        out << line.dump() << '\n';
    }
}

int resolve_label(const LabeledEmbedding& embedding, const std::string& label) {
    int index = embedding.find(label);
    if (index < 0) throw LookupError("unknown label: " + label);
    return index;
}

}  // namespace

BuildDiagnostics cmd_build(const PipelineConfig& config, const std::string& pmi_dump_path,
                           std::ostream& diagnostics) {
    auto records = load_annotation_file(config.annotations_path);
    LabelVocab vocab = build_vocab(records, config.min_count);
    CooccurrenceStats stats = count_cooccurrences(records, vocab);
    PmiMatrix pmi = compute_pmi(stats, pmi_options_from(config));
    if (!pmi_dump_path.empty()) {
        std::ostringstream dump;
        write_pmi_dump(dump, pmi);
        write_file(pmi_dump_path, dump.str());
    }
    Spectrum spectrum = eigendecompose(pmi);
    const int n = static_cast<int>(vocab.size());
    const int k = config.k > 0 ? config.k : std::min(n, 256);
    EmbeddingMatrix embedding = build_embedding(spectrum, k);

    if (!config.vocab_path.empty()) {
        std::ostringstream vocab_text;
        write_vocab(vocab_text, vocab);
        write_file(config.vocab_path, vocab_text.str());
    }
    LabeledEmbedding labeled{vocab.labels(), embedding};
    std::ostringstream embedding_text;
    write_embedding(embedding_text, labeled);
    write_file(config.embeddings_path, embedding_text.str());

    BuildDiagnostics result;
    result.n = vocab.size();
    result.k = k;
    result.explained_variance = explained_variance(spectrum, k);
    result.clamped_count = embedding.clamped_count;
    result.zero_row_count = embedding.zero_row_count();
    diagnostics << "N=" << result.n << " k=" << result.k
                << " explained_variance=" << format_double17(result.explained_variance)
                << " clamped_count=" << result.clamped_count
                << " zero_rows=" << result.zero_row_count << '\n';
    return result;
}

void cmd_query(const std::string& embedding_path, QueryMode mode,
               const std::vector<std::string>& labels, const std::vector<std::string>& minus,
               int p, std::ostream& out) {
    LabeledEmbedding labeled = load_embedding_file(embedding_path);
    std::vector<int> plus_indices;
    for (const auto& label : labels) plus_indices.push_back(resolve_label(labeled, label));
    std::vector<int> minus_indices;
    for (const auto& label : minus) minus_indices.push_back(resolve_label(labeled, label));

    RankedPredictions ranked;
    switch (mode) {
        case QueryMode::Nearest:
            if (plus_indices.size() != 1 || !minus_indices.empty()) {
                throw ArgumentError("nearest mode takes exactly one label");
            }
            ranked = arithmetic_query(plus_indices, {}, labeled.embedding, p);
            break;
        case QueryMode::EncodeDecode:
            ranked = decode(encode(plus_indices, labeled.embedding), labeled.embedding, p);
            break;
        case QueryMode::Arithmetic:
            ranked = arithmetic_query(plus_indices, minus_indices, labeled.embedding, p);
            break;
    }
    emit_ranked_json(ranked, labeled.labels, out);
}

namespace {

struct WeightFileEntry {
    std::string label;
    std::int64_t frequency;
};

std::vector<WeightFileEntry> read_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open weights file: " + path);
    std::vector<WeightFileEntry> entries;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("weights line has no TAB", line_number);
        entries.push_back({line.substr(0, tab), std::stoll(line.substr(tab + 1))});
    }
    if (entries.empty()) throw DegenerateStatisticsError("weights file is empty");
    return entries;
}

}  // namespace

void cmd_eval(const std::string& predictions_path, const std::string& truth_path,
              const std::string& weights_path, double cap_min, double cap_max,
              bool per_class, std::ostream& out) {
    auto weight_entries = read_weight_file(weights_path);
    std::map<std::string, int> vocab;
    std::vector<std::int64_t> frequency;
    std::vector<std::string> labels;
    for (const auto& entry : weight_entries) {
        if (!vocab.emplace(entry.label, static_cast<int>(labels.size())).second) {
            throw ArgumentError("duplicate label in weights file: " + entry.label);
        }
        labels.push_back(entry.label);
        frequency.push_back(entry.frequency);
    }

    auto resolve = [&](const std::vector<RawRecord>& records, const char* role) {
        std::map<std::string, std::vector<int>> resolved;
        std::vector<std::string> unknown;
        for (const auto& record : records) {
            std::vector<int> indices;
            for (const auto& label : record.labels) {
                auto it = vocab.find(label);
                if (it == vocab.end()) {
                    unknown.push_back(label);
                } else {
                    indices.push_back(it->second);
                }
            }
            resolved[record.instance_id] = std::move(indices);
        }
        if (!unknown.empty()) {
            std::sort(unknown.begin(), unknown.end());
            unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
            std::string joined;
            for (const auto& label : unknown) joined += (joined.empty() ? "" : ", ") + label;
            throw AlignmentError(std::string(role) + " labels missing from weights vocabulary: " +
                                 joined);
        }
        return resolved;
    };

    auto truth = resolve(load_annotation_file(truth_path), "truth");
    auto predictions = resolve(load_annotation_file(predictions_path), "prediction");

    std::vector<EvalInstance> instances;
    for (const auto& [instance_id, truth_labels] : truth) {
        EvalInstance instance;
        instance.truth.insert(truth_labels.begin(), truth_labels.end());
        auto it = predictions.find(instance_id);
        if (it != predictions.end()) {
            instance.predictions = it->second;
            if (instance.predictions.size() > 100) instance.predictions.resize(100);
        }
        instances.push_back(std::move(instance));
    }

    ClassWeights weights =
        compute_class_weights(frequency, cap_min, cap_max, static_cast<double>(labels.size()));
    EvalResult result = weighted_map_at_100(instances, weights);

    json report;
    report["weighted_map"] = result.weighted_map;
    report["counted_classes"] = result.counted_classes;
    report["num_classes"] = labels.size();
    if (per_class) {
        json breakdown = json::object();
        for (std::size_t n = 0; n < labels.size(); ++n) {
            breakdown[labels[n]] = result.per_class_ap[n];
        }
        report["per_class_ap"] = breakdown;
    }
    out << report.dump(2) << '\n';
}

double cmd_zero_shot(const std::string& embedding_path, const std::string& annotations_path,
                     const std::string& new_label, const std::string& output_path,
                     const PipelineConfig& config, std::ostream& out) {
    LabeledEmbedding labeled = load_embedding_file(embedding_path);
    auto records = load_annotation_file(annotations_path);
    if (records.empty()) throw DegenerateStatisticsError("annotations file is empty");

    // Identity-ordered vocabulary over the known labels plus the new one.
    // Re-inserting a present class is allowed; it reuses its existing slot and
    // the appended row gets a disambiguated name.
    std::vector<std::string> vocab_labels = labeled.labels;
    const bool already_present = labeled.find(new_label) >= 0;
    int new_index;
    if (already_present) {
        new_index = labeled.find(new_label);
    } else {
        new_index = static_cast<int>(vocab_labels.size());
        vocab_labels.push_back(new_label);
    }
    LabelVocab vocab(vocab_labels, std::vector<std::int64_t>(vocab_labels.size(), 0));
    CooccurrenceStats stats = count_cooccurrences(records, vocab);

    if (stats.marginal(new_index) <= 0) {
        throw DegenerateStatisticsError("new class never occurs in the provided annotations");
    }
    const double alpha = config.alpha;
    const double log_total = std::log(static_cast<double>(stats.num_instances()) + alpha);
    const double log_new = std::log(static_cast<double>(stats.marginal(new_index)) + alpha);
    const Eigen::Index n = labeled.embedding.n();
    Eigen::VectorXd pmi_column = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        // The self-entry (-ln p) participates exactly when the factorized
        // matrix kept its diagonal.
        if (static_cast<int>(j) == new_index && config.zero_diagonal) continue;
        const std::int64_t joint = stats.pair_count(new_index, static_cast<int>(j));
        if (joint <= 0) continue;
        double value = std::log(static_cast<double>(joint) + alpha) + log_total - log_new -
                       std::log(static_cast<double>(stats.marginal(static_cast<int>(j))) + alpha);
        if (config.pmi_mode == "positive" && value <= 0.0) continue;
        pmi_column(j) = value;
    }

    ZeroShotResult inserted = zero_shot_insert(labeled.embedding, pmi_column);
    LabeledEmbedding updated;
    updated.labels = labeled.labels;
    updated.labels.push_back(already_present ? new_label + "#inserted" : new_label);
    updated.embedding = inserted.embedding;
    std::ostringstream text;
    write_embedding(text, updated);
    write_file(output_path, text.str());

    json report;
    report["label"] = new_label;
    report["residual"] = inserted.residual_norm;
    report["observed_pairs"] = (pmi_column.array() != 0.0).count();
    out << report.dump(2) << '\n';
    return inserted.residual_norm;
}

namespace {

long steps_to_reach(const TrainHistory& history, double threshold) {
    for (const auto& record : history.records) {
        if (record.weighted_map >= threshold - 1e-12) return record.step;
    }
    return -1;
}

}  // namespace

std::string TrainDemoSummary::to_json() const {
    json j;
    j["logistic_final_map"] = logistic_final_map;
    j["cosine_final_map"] = cosine_final_map;
    j["cosine_steps_to_baseline"] = cosine_steps_to_baseline;
    j["logistic_steps_to_baseline"] = logistic_steps_to_baseline;
    return j.dump(2);
}

TrainDemoSummary cmd_train_demo(const TrainDemoConfig& config, std::ostream& out) {
    SyntheticDataset dataset = generate_synthetic(config.synthetic, config.seed);
    const int num_labels = dataset.num_labels();

    // Co-occurrence statistics over the generated corpus, label ids as-is.
    CooccurrenceStats stats(static_cast<std::size_t>(num_labels));
    for (const auto& labelset : dataset.labelsets) stats.add_instance(labelset);
    PmiMatrix pmi = compute_pmi(stats);
    Spectrum spectrum = eigendecompose(pmi);
    const int k = std::min(config.k, num_labels);
    EmbeddingMatrix embedding = build_embedding(spectrum, k);

    LinearModel cosine_model =
        init_linear_model(config.synthetic.feature_dim, k, 0.1, config.seed);
    LinearModel logistic_model =
        init_linear_model(config.synthetic.feature_dim, num_labels, 0.1, config.seed);

    OptimizerConfig optimizer = config.optimizer;
    optimizer.seed = config.seed;

    TrainDemoSummary summary;
    summary.cosine = train(cosine_model, dataset, &embedding, LossKind::Cosine, optimizer);
    summary.logistic = train(logistic_model, dataset, nullptr, LossKind::Logistic, optimizer);

    summary.logistic_final_map = summary.logistic.records.back().weighted_map;
    summary.cosine_final_map = summary.cosine.records.back().weighted_map;
    summary.cosine_steps_to_baseline = steps_to_reach(summary.cosine, summary.logistic_final_map);
    summary.logistic_steps_to_baseline =
        steps_to_reach(summary.logistic, summary.logistic_final_map);

    if (!config.cosine_csv_path.empty()) {
        std::ostringstream csv;
        write_history_csv(csv, summary.cosine);
        write_file(config.cosine_csv_path, csv.str());
    }
    if (!config.logistic_csv_path.empty()) {
        std::ostringstream csv;
        write_history_csv(csv, summary.logistic);
        write_file(config.logistic_csv_path, csv.str());
    }
    if (!config.comparison_csv_path.empty()) {
        std::ostringstream csv;
        csv << "step,cosine_map,logistic_map\n";
        const std::size_t rows =
            std::min(summary.cosine.records.size(), summary.logistic.records.size());
        for (std::size_t i = 0; i < rows; ++i) {
            csv << summary.cosine.records[i].step << ','
                << format_double17(summary.cosine.records[i].weighted_map) << ','
                << format_double17(summary.logistic.records[i].weighted_map) << '\n';
        }
        write_file(config.comparison_csv_path, csv.str());
    }

    out << summary.to_json() << '\n';
    return summary;
}

void cmd_stats(const std::string& annotations_path, std::int64_t min_count, std::ostream& out) {
    auto records = load_annotation_file(annotations_path);
    LabelVocab vocab = build_vocab(records, min_count);
    CooccurrenceStats stats = count_cooccurrences(records, vocab);
    std::int64_t assignments = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) assignments += vocab.count(i);
    json report;
    report["num_instances"] = stats.num_instances();
    report["num_labels"] = vocab.size();
    report["total_label_assignments"] = assignments;
    report["observed_pairs"] = stats.pairs().size();
    json top = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(vocab.size(), 10); ++i) {
        top.push_back({{"label", vocab.label(i)}, {"count", vocab.count(i)}});
    }
    report["top_labels"] = top;
    out << report.dump(2) << '\n';
}

}  // namespace labelsphere
