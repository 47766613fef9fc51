#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "bjdm/dataset.hpp"
#include "bjdm/hash.hpp"

namespace bjdm {

/// Canonical content of one transaction (sorted items) or one sequence
/// (ordered itemset ids). Content equality is group identity.
using Content = std::vector<std::uint32_t>;

/// Occurrence count of every distinct transaction (or sequence), plus the
/// number of transactions of each length. Contents are hashed for indexing
/// and always compared in full.
class DuplicateGroups {
public:
    DuplicateGroups() = default;
    explicit DuplicateGroups(std::span<const Content> contents);
    static DuplicateGroups of(const TransactionalDataset& dataset) { return DuplicateGroups(dataset.transactions); }
    static DuplicateGroups of(const SequenceDataset& dataset) { return DuplicateGroups(dataset.sequences); }

    std::uint32_t count(const Content& content) const;
    std::size_t num_groups() const noexcept { return counts_.size(); }
    std::uint64_t size() const noexcept { return size_; }
    /// |T_l| for every length l present.
    const std::map<std::size_t, std::uint64_t>& length_totals() const noexcept { return totals_; }
    const std::unordered_map<Content, std::uint32_t, ContentHash>& counts() const noexcept { return counts_; }

    void add(const Content& content);
    /// Throws ValidationError when the content is absent.
    void remove(const Content& content);

    /// True when these groups are exactly those of `contents`. Cheaper than
    /// building a fresh instance and comparing.
    bool describes(std::span<const Content> contents) const;

    friend bool operator==(const DuplicateGroups&, const DuplicateGroups&) = default;

private:
    std::unordered_map<Content, std::uint32_t, ContentHash> counts_;
    std::map<std::size_t, std::uint64_t> totals_;
    std::uint64_t size_ = 0;
};

/// ln Q(D): the log of the number of distinct row orderings (matrices) that
/// represent the dataset, sum over lengths of ln |T_l|! - sum of ln n_g!.
double log_num_matrices(const DuplicateGroups& groups);

/// Q(D) as an exact integer. Only for datasets with at most 20 transactions;
/// throws ValidationError otherwise.
std::uint64_t num_matrices_exact(const DuplicateGroups& groups);

/// Q(D)/Q(D') for a move replacing `removed` contents with `added` ones.
/// Kept as an exact fraction of machine integers while both parts stay
/// below 1e15, then continued in log space.
class TransitionRatio {
public:
    void multiply(std::uint64_t factor);
    void divide(std::uint64_t factor);

    bool exact() const noexcept { return exact_; }
    std::uint64_t numerator() const noexcept { return num_; }
    std::uint64_t denominator() const noexcept { return den_; }
    double log_value() const noexcept { return log_; }
    double value() const noexcept;

private:
    void normalize();

    std::uint64_t num_ = 1;
    std::uint64_t den_ = 1;
    double log_ = 0.0;
    bool exact_ = true;
};

/// Evaluates the ratio on a scratch overlay; `groups` is not modified.
/// Removals are processed first: a removal from a group currently holding n
/// copies contributes 1/n, an addition to a group holding n contributes n+1.
/// Throws ValidationError when a removal targets an absent content or when
/// the removed and added lengths do not pair up.
TransitionRatio transition_ratio(const DuplicateGroups& groups, std::span<const Content> removed,
                                 std::span<const Content> added);

/// Commits the move to `groups`. Same preconditions as transition_ratio.
void apply_update(DuplicateGroups& groups, std::span<const Content> removed, std::span<const Content> added);

}  // namespace bjdm
