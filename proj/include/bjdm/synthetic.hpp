#pragma once

#include <cstddef>
#include <cstdint>

#include "bjdm/dataset.hpp"

namespace bjdm {

struct SyntheticOptions {
    /// Item popularity follows weight(rank r) = 1 / (r + 1)^zipf_exponent.
    double zipf_exponent = 1.0;
};

/// Random transactional dataset with controlled size, alphabet, and mean
/// transaction length. Lengths are 1 + Poisson(avg_length - 1) clipped to
/// num_items; items are drawn without replacement with Zipf popularity.
/// Labels are "1".."num_items". Deterministic given the seed.
TransactionalDataset generate_synthetic(std::size_t num_transactions, std::size_t num_items,
                                        double avg_length, std::uint64_t seed,
                                        const SyntheticOptions& options = {});

struct SyntheticSequenceOptions {
    /// Number of distinct itemsets in the pool sequences draw from.
    std::size_t num_itemsets = 200;
    /// Mean itemset size (1 + Poisson(mean - 1), clipped to num_items).
    double avg_itemset_size = 1.0;
    double zipf_exponent = 1.0;
};

/// Random sequence dataset. Sequence lengths are 1 + Poisson(avg_length - 1);
/// each position draws an itemset from a Zipf-weighted pool with
/// replacement, so itemsets may repeat inside a sequence.
SequenceDataset generate_synthetic_sequences(std::size_t num_sequences, std::size_t num_items,
                                             double avg_length, std::uint64_t seed,
                                             const SyntheticSequenceOptions& options = {});

}  // namespace bjdm
