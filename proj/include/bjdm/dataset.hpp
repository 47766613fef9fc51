#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bjdm/hash.hpp"

namespace bjdm {

using ItemId = std::uint32_t;
using ItemsetId = std::uint32_t;

/// Sorted, duplicate-free list of items.
using Itemset = std::vector<ItemId>;

/// Ordered list of itemset identifiers (one seq-transaction).
using Sequence = std::vector<ItemsetId>;

/// Bag of itemsets. Transactions keep file order; each one is sorted and
/// duplicate-free. item_labels[i] is the original token of ItemId i.
struct TransactionalDataset {
    std::vector<Itemset> transactions;
    std::vector<std::string> item_labels;

    std::size_t size() const noexcept { return transactions.size(); }
    std::size_t num_items() const noexcept { return item_labels.size(); }
    /// Sum of transaction lengths (number of ones in the matrix).
    std::uint64_t total_length() const noexcept;

    /// Throws ValidationError when an invariant does not hold.
    void validate() const;
};

/// Bijection between itemset contents and dense ItemsetIds.
class ItemsetDictionary {
public:
    /// Returns the id of `content`, registering it if new. `content` must be
    /// sorted and duplicate-free.
    ItemsetId intern(const Itemset& content);

    /// Id of `content` or -1 when absent.
    std::int64_t find(const Itemset& content) const;

    const Itemset& content(ItemsetId id) const { return contents_.at(id); }
    std::size_t size() const noexcept { return contents_.size(); }
    const std::vector<Itemset>& contents() const noexcept { return contents_; }

    friend bool operator==(const ItemsetDictionary& a, const ItemsetDictionary& b) {
        return a.contents_ == b.contents_;
    }

private:
    std::vector<Itemset> contents_;
    std::unordered_map<Itemset, ItemsetId, ContentHash> ids_;
};

/// Bag of sequences over a shared itemset dictionary.
struct SequenceDataset {
    std::vector<Sequence> sequences;
    ItemsetDictionary dictionary;
    std::vector<std::string> item_labels;

    std::size_t size() const noexcept { return sequences.size(); }
    /// Number of (sequence, position) participations, i.e. |E| of the multigraph.
    std::uint64_t total_length() const noexcept;

    void validate() const;
};

/// Canonical label-level view of a dataset: each transaction rendered as its
/// sorted list of labels, the whole bag sorted. Two datasets are the same bag
/// of transactions iff their canonical forms are equal.
std::vector<std::vector<std::string>> canonical_form(const TransactionalDataset& dataset);

/// Same for sequences: each sequence rendered as its list of label-itemsets.
std::vector<std::vector<std::vector<std::string>>> canonical_form(const SequenceDataset& dataset);

/// Histogram of transaction (or sequence) lengths.
std::map<std::size_t, std::size_t> length_histogram(const TransactionalDataset& dataset);
std::map<std::size_t, std::size_t> length_histogram(const SequenceDataset& dataset);

/// support(i) for every item.
std::vector<std::uint32_t> item_supports(const TransactionalDataset& dataset);

/// Multi-support of every dictionary itemset.
std::vector<std::uint32_t> itemset_multi_supports(const SequenceDataset& dataset);

}  // namespace bjdm
