#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "labelsphere/corpus.hpp"
#include "labelsphere/factorize.hpp"
#include "labelsphere/pmi.hpp"
#include "labelsphere/trainer.hpp"

namespace labelsphere {

/// Shortest-exact decimal we use everywhere floats hit a file (17 significant
/// digits round-trips any double).
std::string format_double17(double value);

/// An embedding matrix together with the label naming its rows.
struct LabeledEmbedding {
    std::vector<std::string> labels;
    EmbeddingMatrix embedding;

    int find(const std::string& label) const;
};

// Vocabulary file: `label<TAB>index<TAB>count`, sorted by index.
void write_vocab(std::ostream& out, const LabelVocab& vocab);
LabelVocab read_vocab(std::istream& in);

// Embedding file: header `labelsphere v1 N=<n> K=<k>`, one
// `label<TAB>f1 f2 ... fk` line per class, footer `eigenvalues<TAB>l1 ... lk`.
void write_embedding(std::ostream& out, const LabeledEmbedding& embedding);
LabeledEmbedding read_embedding(std::istream& in);

// PMI dump: `i<TAB>j<TAB>value` with i <= j.
void write_pmi_dump(std::ostream& out, const PmiMatrix& matrix);

// Training history: CSV with header `step,loss,weighted_map`.
void write_history_csv(std::ostream& out, const TrainHistory& history);

void write_annotations(std::ostream& out, const std::vector<RawRecord>& records);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace labelsphere
