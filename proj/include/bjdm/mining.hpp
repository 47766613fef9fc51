#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bjdm/dataset.hpp"

namespace bjdm {

/// Minimum support, either as a transaction count or as a fraction of |D|.
struct Threshold {
    double value = 0.0;
    bool fractional = false;

    static Threshold absolute(double count) { return {count, false}; }
    static Threshold fraction(double f) { return {f, true}; }

    /// Command-line convention: values <= 1 or non-integral are fractions,
    /// integral values >= 2 are counts.
    static Threshold parse(double value);

    /// Smallest admissible support count for a dataset of n transactions;
    /// fractions are rounded up. Throws ValidationError when the threshold
    /// is not positive, a fraction exceeds 1, or a count exceeds n.
    std::uint32_t min_support(std::size_t n) const;
};

struct ItemsetPattern {
    Itemset items;
    std::uint32_t support = 0;

    std::size_t length() const noexcept { return items.size(); }
    friend bool operator==(const ItemsetPattern&, const ItemsetPattern&) = default;
};

/// Ordered list of itemsets. Its length is the number of itemsets.
struct SequencePattern {
    std::vector<Itemset> itemsets;
    std::uint32_t support = 0;

    std::size_t length() const noexcept { return itemsets.size(); }
    friend bool operator==(const SequencePattern&, const SequencePattern&) = default;
};

/// Transactions containing every item of `itemset` (sorted).
std::uint32_t support(const TransactionalDataset& dataset, const Itemset& itemset);

/// Whether `pattern` occurs in `sequence`: itemsets matched, in order, at
/// strictly increasing positions, each a subset of the itemset it lands on.
bool contains(const SequenceDataset& dataset, const Sequence& sequence, const std::vector<Itemset>& pattern);

/// Sequences containing `pattern`.
std::uint32_t support(const SequenceDataset& dataset, const std::vector<Itemset>& pattern);

/// All itemsets with support >= threshold, ordered by length, then by item ids.
std::vector<ItemsetPattern> mine_frequent_itemsets(const TransactionalDataset& dataset, Threshold threshold);

/// All sequential patterns with support >= threshold, ordered by length, then
/// lexicographically by itemsets.
std::vector<SequencePattern> mine_frequent_sequences(const SequenceDataset& dataset, Threshold threshold);

std::map<std::size_t, std::size_t> fi_length_histogram(const std::vector<ItemsetPattern>& patterns);
std::map<std::size_t, std::size_t> fi_length_histogram(const std::vector<SequencePattern>& patterns);

/// One line per pattern: labels space-separated, itemsets joined by " -1 ",
/// then " #SUP: n".
std::string format_patterns(const std::vector<ItemsetPattern>& patterns, const std::vector<std::string>& labels);
std::string format_patterns(const std::vector<SequencePattern>& patterns, const std::vector<std::string>& labels);

}  // namespace bjdm
