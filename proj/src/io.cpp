#include "labelsphere/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "labelsphere/errors.hpp"

namespace labelsphere {

std::string format_double17(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

int LabeledEmbedding::find(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return static_cast<int>(i);
    }
    return -1;
}

void write_vocab(std::ostream& out, const LabelVocab& vocab) {
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        out << vocab.label(i) << '\t' << i << '\t' << vocab.count(i) << '\n';
    }
}

LabelVocab read_vocab(std::istream& in) {
    std::vector<std::string> labels;
    std::vector<std::int64_t> counts;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string label, index_text, count_text;
        if (!std::getline(fields, label, '\t') || !std::getline(fields, index_text, '\t') ||
            !std::getline(fields, count_text)) {
            throw ParseError("malformed vocabulary line", line_number);
        }
        if (std::stoul(index_text) != labels.size()) {
            throw ParseError("vocabulary indices must be contiguous from 0", line_number);
        }
        labels.push_back(label);
        counts.push_back(std::stoll(count_text));
    }
    return LabelVocab(std::move(labels), std::move(counts));
}

void write_embedding(std::ostream& out, const LabeledEmbedding& labeled) {
    const auto& E = labeled.embedding;
    if (static_cast<Eigen::Index>(labeled.labels.size()) != E.n()) {
        throw ArgumentError("label list does not match embedding row count");
    }
    out << "labelsphere v1 N=" << E.n() << " K=" << E.k() << '\n';
    for (Eigen::Index i = 0; i < E.n(); ++i) {
        out << labeled.labels[static_cast<std::size_t>(i)] << '\t';
        for (Eigen::Index c = 0; c < E.k(); ++c) {
            if (c) out << ' ';
            out << format_double17(E.rows(i, c));
        }
        out << '\n';
    }
    out << "eigenvalues\t";
    for (Eigen::Index c = 0; c < E.k(); ++c) {
        if (c) out << ' ';
        out << format_double17(E.retained_eigenvalues(c));
    }
    out << '\n';
}

LabeledEmbedding read_embedding(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty embedding file", 1);
    long n = 0;
    long k = 0;
    if (std::sscanf(header.c_str(), "labelsphere v1 N=%ld K=%ld", &n, &k) != 2 || n < 1 || k < 1) {
        throw ParseError("bad embedding header: " + header, 1);
    }
    LabeledEmbedding labeled;
    labeled.embedding.rows.resize(n, k);
    labeled.embedding.retained_eigenvalues.resize(k);
    std::string line;
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw ParseError("embedding file truncated", static_cast<std::size_t>(i) + 2);
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("embedding row missing TAB", static_cast<std::size_t>(i) + 2);
        }
        labeled.labels.push_back(line.substr(0, tab));
        std::istringstream values(line.substr(tab + 1));
        for (long c = 0; c < k; ++c) {
            if (!(values >> labeled.embedding.rows(i, c))) {
                throw ParseError("embedding row has too few values",
                                 static_cast<std::size_t>(i) + 2);
            }
        }
    }
    if (!std::getline(in, line) || line.rfind("eigenvalues\t", 0) != 0) {
        throw ParseError("missing eigenvalues footer", static_cast<std::size_t>(n) + 2);
    }
    std::istringstream values(line.substr(std::string("eigenvalues\t").size()));
    for (long c = 0; c < k; ++c) {
        if (!(values >> labeled.embedding.retained_eigenvalues(c))) {
            throw ParseError("eigenvalue footer has too few values",
                             static_cast<std::size_t>(n) + 2);
        }
    }
    return labeled;
}

void write_pmi_dump(std::ostream& out, const PmiMatrix& matrix) {
    for (const auto& [key, value] : matrix.entries()) {
        out << key.first << '\t' << key.second << '\t' << format_double17(value) << '\n';
    }
}

void write_history_csv(std::ostream& out, const TrainHistory& history) {
    out << "step,loss,weighted_map\n";
    for (const auto& record : history.records) {
        out << record.step << ',' << format_double17(record.loss) << ','
            << format_double17(record.weighted_map) << '\n';
    }
}

void write_annotations(std::ostream& out, const std::vector<RawRecord>& records) {
    for (const auto& record : records) {
        out << record.instance_id << '\t';
        for (std::size_t i = 0; i < record.labels.size(); ++i) {
            if (i) out << ',';
            out << record.labels[i];
        }
        out << '\n';
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write file: " + path);
    out << contents;
}

}  // namespace labelsphere
