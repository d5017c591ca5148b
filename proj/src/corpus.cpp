#include "labelsphere/corpus.hpp"

#include <algorithm>
#include <set>

#include "labelsphere/errors.hpp"

namespace labelsphere {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto begin = s.find_first_not_of(ws);
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(ws);
    return s.substr(begin, end - begin + 1);
}

}  // namespace

LabelVocab::LabelVocab(std::vector<std::string> labels, std::vector<std::int64_t> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
    if (labels_.size() != counts_.size()) {
        throw ArgumentError("vocab labels and counts must have equal length");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto [it, inserted] = index_of_.emplace(labels_[i], static_cast<int>(i));
        if (!inserted) throw ArgumentError("duplicate vocab label: " + labels_[i]);
    }
}

int LabelVocab::find(const std::string& label) const {
    auto it = index_of_.find(label);
    return it == index_of_.end() ? -1 : it->second;
}

std::int64_t CooccurrenceStats::pair_count(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = pairs_.find({i, j});
    return it == pairs_.end() ? 0 : it->second;
}

void CooccurrenceStats::add_instance(const std::vector<int>& indices) {
    if (indices.empty()) return;
    ++num_instances_;
    for (std::size_t a = 0; a < indices.size(); ++a) {
        ++marginal_.at(static_cast<std::size_t>(indices[a]));
        for (std::size_t b = a; b < indices.size(); ++b) {
            ++pairs_[{indices[a], indices[b]}];
        }
    }
}

void CooccurrenceStats::merge(const CooccurrenceStats& other) {
    if (other.marginal_.size() != marginal_.size()) {
        throw ArgumentError("cannot merge stats over different vocabularies");
    }
    num_instances_ += other.num_instances_;
    for (std::size_t i = 0; i < marginal_.size(); ++i) marginal_[i] += other.marginal_[i];
    for (const auto& [key, count] : other.pairs_) pairs_[key] += count;
}

std::vector<RawRecord> load_annotations(std::istream& source) {
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(source, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError("annotation line has no TAB separator", line_number);
        }
        RawRecord record;
        record.instance_id = trim(line.substr(0, tab));
        std::string rest = line.substr(tab + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            std::string token =
                trim(comma == std::string::npos ? rest.substr(pos) : rest.substr(pos, comma - pos));
            if (!token.empty()) record.labels.push_back(std::move(token));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        records.push_back(std::move(record));
    }
    return records;
}

LabelVocab build_vocab(const std::vector<RawRecord>& records, std::int64_t min_count) {
    if (min_count < 1) throw ArgumentError("min_count must be >= 1");
    std::map<std::string, std::int64_t> counts;
    for (const auto& record : records) {
        std::set<std::string> unique(record.labels.begin(), record.labels.end());
        for (const auto& label : unique) ++counts[label];
    }
    std::vector<std::pair<std::string, std::int64_t>> kept;
    for (const auto& [label, count] : counts) {
        if (count >= min_count) kept.emplace_back(label, count);
    }
    if (kept.empty()) {
        throw DegenerateStatisticsError("no label meets the min_count threshold");
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> labels;
    std::vector<std::int64_t> label_counts;
    labels.reserve(kept.size());
    for (auto& [label, count] : kept) {
        labels.push_back(std::move(label));
        label_counts.push_back(count);
    }
    return LabelVocab(std::move(labels), std::move(label_counts));
}

CooccurrenceStats count_cooccurrences(const std::vector<RawRecord>& records,
                                      const LabelVocab& vocab) {
    CooccurrenceStats stats(vocab.size());
    for (const auto& record : records) {
        std::set<int> retained;
        for (const auto& label : record.labels) {
            int index = vocab.find(label);
            if (index >= 0) retained.insert(index);
        }
        stats.add_instance(std::vector<int>(retained.begin(), retained.end()));
    }
    return stats;
}

}  // namespace labelsphere
