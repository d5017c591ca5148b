#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "labelsphere/trainer.hpp"

namespace labelsphere {

/// Everything a pipeline run needs; serializable to JSON with exact
/// round-trip. Flags override file values.
struct PipelineConfig {
    std::string annotations_path;
    std::string vocab_path;
    std::string embeddings_path;
    std::string weights_path;
    int k = 0;  // 0 selects min(N, 256)
    std::int64_t min_count = 1;
    std::string pmi_mode = "positive";  // or "raw"
    double alpha = 0.0;
    bool zero_diagonal = false;
    double cap_min = 0.1;
    double cap_max = 10.0;
    int p = 100;
    std::uint64_t seed = 1;

    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);
};

struct BuildDiagnostics {
    std::size_t n = 0;
    int k = 0;
    double explained_variance = 0.0;
    int clamped_count = 0;
    int zero_row_count = 0;
};

/// build: annotations -> vocab file + embedding file. Optional PMI dump.
BuildDiagnostics cmd_build(const PipelineConfig& config, const std::string& pmi_dump_path,
                           std::ostream& diagnostics);

enum class QueryMode { Nearest, EncodeDecode, Arithmetic };

/// query: emits ranked results as JSON lines `{"label":..., "proximity":...}`.
void cmd_query(const std::string& embedding_path, QueryMode mode,
               const std::vector<std::string>& labels, const std::vector<std::string>& minus,
               int p, std::ostream& out);

/// eval: ranked-prediction TSV vs truth TSV, weights from a frequency file
/// that also fixes the evaluation vocabulary. Emits an EvalResult JSON object.
void cmd_eval(const std::string& predictions_path, const std::string& truth_path,
              const std::string& weights_path, double cap_min, double cap_max,
              bool per_class, std::ostream& out);

/// zero-shot: measures the new class's PMI against known classes from the
/// given annotations, inserts it, and writes an N+1-row embedding file.
/// Returns the least-squares residual norm.
double cmd_zero_shot(const std::string& embedding_path, const std::string& annotations_path,
                     const std::string& new_label, const std::string& output_path,
                     const PipelineConfig& config, std::ostream& out);

struct TrainDemoConfig {
    SyntheticConfig synthetic;
    OptimizerConfig optimizer;
    int k = 24;  // must give every co-occurrence cluster spectral mass
    std::uint64_t seed = 1;
    std::string cosine_csv_path;
    std::string logistic_csv_path;
    std::string comparison_csv_path;  // optional plot-ready two-arm file
};

struct TrainDemoSummary {
    TrainHistory cosine;
    TrainHistory logistic;
    double logistic_final_map = 0.0;
    double cosine_final_map = 0.0;
    long cosine_steps_to_baseline = -1;   // -1: never reached
    long logistic_steps_to_baseline = -1;

    std::string to_json() const;
};

/// train-demo: runs the cosine-regression and logistic arms with identical
/// optimizer settings and seeds, writes per-arm CSVs and the comparison file.
TrainDemoSummary cmd_train_demo(const TrainDemoConfig& config, std::ostream& out);

/// stats: corpus summary as a JSON object.
void cmd_stats(const std::string& annotations_path, std::int64_t min_count, std::ostream& out);

}  // namespace labelsphere
