#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace labelsphere {

/// One line of an annotation file before vocabulary resolution.
struct RawRecord {
    std::string instance_id;
    std::vector<std::string> labels;
};

/// Bidirectional label <-> dense index mapping with occurrence counts.
/// Indices are contiguous in [0, size()).
class LabelVocab {
public:
    LabelVocab() = default;
    LabelVocab(std::vector<std::string> labels, std::vector<std::int64_t> counts);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t index) const { return labels_.at(index); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::int64_t count(std::size_t index) const { return counts_.at(index); }

    /// Returns the index of `label`, or -1 if absent.
    int find(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::vector<std::int64_t> counts_;
    std::unordered_map<std::string, int> index_of_;
};

/// An instance resolved against a vocabulary: a non-empty set of label indices.
struct AnnotationRecord {
    std::string instance_id;
    std::vector<int> label_indices;  // sorted, unique
};

/// Instance count, per-label marginals and sparse upper-triangular pair counts.
/// Lookups are symmetric; the diagonal equals the marginal by construction.
class CooccurrenceStats {
public:
    explicit CooccurrenceStats(std::size_t num_labels) : marginal_(num_labels, 0) {}

    std::int64_t num_instances() const { return num_instances_; }
    std::size_t num_labels() const { return marginal_.size(); }
    std::int64_t marginal(int i) const { return marginal_.at(static_cast<std::size_t>(i)); }

    /// Joint instance count for the unordered pair {i, j}; 0 if never observed.
    std::int64_t pair_count(int i, int j) const;

    /// Observed pairs, keyed (i, j) with i <= j, in deterministic order.
    const std::map<std::pair<int, int>, std::int64_t>& pairs() const { return pairs_; }

    /// Counts one instance given its sorted, unique retained label indices.
    /// Instances with no retained label are ignored.
    void add_instance(const std::vector<int>& indices);

    /// Merges another shard's counts into this one (associative, commutative).
    void merge(const CooccurrenceStats& other);

private:
    std::int64_t num_instances_ = 0;
    std::vector<std::int64_t> marginal_;
    std::map<std::pair<int, int>, std::int64_t> pairs_;
};

/// Parses annotation lines `instance-id<TAB>label1,label2,...` in file order.
/// Labels are whitespace-trimmed; empty label lists are kept for downstream
/// rejection. Throws ParseError on a line without a TAB.
std::vector<RawRecord> load_annotations(std::istream& source);

/// Builds the vocabulary of labels occurring in >= min_count distinct
/// instances, ordered by descending occurrence count then lexicographic.
/// Throws DegenerateStatisticsError if no label survives.
LabelVocab build_vocab(const std::vector<RawRecord>& records, std::int64_t min_count = 1);

/// Accumulates co-occurrence statistics. Labels absent from the vocabulary
/// are dropped; instances left with no retained label do not count.
CooccurrenceStats count_cooccurrences(const std::vector<RawRecord>& records,
                                      const LabelVocab& vocab);

}  // namespace labelsphere
