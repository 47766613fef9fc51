#include "bjdm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "bjdm/errors.hpp"
#include "bjdm/random.hpp"

namespace bjdm {

namespace {

std::vector<double> zipf_weights(std::size_t n, double exponent) {
    std::vector<double> w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    return w;
}

std::size_t draw_length(Rng& rng, double mean, std::size_t cap) {
    std::size_t length = 1;
    if (mean > 1.0) {
        std::poisson_distribution<std::size_t> poisson(mean - 1.0);
        length += poisson(rng.engine());
    }
    return std::min(length, cap);
}

/// Weighted sampling without replacement (Efraimidis-Spirakis keys u^(1/w)).
std::vector<std::uint32_t> weighted_subset(Rng& rng, const std::vector<double>& weights, std::size_t k) {
    using Keyed = std::pair<double, std::uint32_t>;
    std::priority_queue<Keyed, std::vector<Keyed>, std::greater<>> heap;
    for (std::uint32_t i = 0; i < weights.size(); ++i) {
        double u = rng.uniform01();
        if (u == 0.0) u = 0x1.0p-60;
        const double key = std::log(u) / weights[i];
        if (heap.size() < k) {
            heap.emplace(key, i);
        } else if (key > heap.top().first) {
            heap.pop();
            heap.emplace(key, i);
        }
    }
    std::vector<std::uint32_t> out;
    out.reserve(k);
    while (!heap.empty()) {
        out.push_back(heap.top().second);
        heap.pop();
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> numeric_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i + 1);
    return labels;
}

/// Alias-free cumulative table for drawing one index with given weights.
class CumulativeTable {
public:
    explicit CumulativeTable(const std::vector<double>& weights) : cumulative_(weights.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) cumulative_[i] = acc += weights[i];
    }

    std::size_t draw(Rng& rng) const {
        const double x = rng.uniform01() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace

TransactionalDataset generate_synthetic(std::size_t num_transactions, std::size_t num_items, double avg_length,
                                        std::uint64_t seed, const SyntheticOptions& options) {
    if (num_transactions < 1 || num_items < 1 || !(avg_length >= 1.0))
        throw ValidationError("synthetic parameters must be >= 1");
    if (avg_length > static_cast<double>(num_items))
        throw ValidationError("average length exceeds the number of items");

    Rng rng(seed);
    const auto weights = zipf_weights(num_items, options.zipf_exponent);
    TransactionalDataset dataset;
    dataset.item_labels = numeric_labels(num_items);
    dataset.transactions.reserve(num_transactions);
    for (std::size_t t = 0; t < num_transactions; ++t) {
        const std::size_t length = draw_length(rng, avg_length, num_items);
        dataset.transactions.push_back(weighted_subset(rng, weights, length));
    }
    return dataset;
}

SequenceDataset generate_synthetic_sequences(std::size_t num_sequences, std::size_t num_items, double avg_length,
                                             std::uint64_t seed, const SyntheticSequenceOptions& options) {
    if (num_sequences < 1 || num_items < 1 || !(avg_length >= 1.0) || options.num_itemsets < 1 ||
        !(options.avg_itemset_size >= 1.0))
        throw ValidationError("synthetic parameters must be >= 1");
    if (options.avg_itemset_size > static_cast<double>(num_items))
        throw ValidationError("average itemset size exceeds the number of items");

    Rng rng(seed);
    const auto item_weights = zipf_weights(num_items, options.zipf_exponent);

    // Pool of distinct itemsets; duplicates are redrawn a bounded number of times.
    SequenceDataset dataset;
    dataset.item_labels = numeric_labels(num_items);
    std::vector<Itemset> pool;
    for (std::size_t attempts = 0; pool.size() < options.num_itemsets && attempts < 50 * options.num_itemsets;
         ++attempts) {
        Itemset content = weighted_subset(rng, item_weights, draw_length(rng, options.avg_itemset_size, num_items));
        if (std::find(pool.begin(), pool.end(), content) == pool.end()) pool.push_back(std::move(content));
    }
    const CumulativeTable pool_table(zipf_weights(pool.size(), options.zipf_exponent));

    // Interning happens on first use so the dictionary holds only itemsets
    // with support at least one.
    dataset.sequences.reserve(num_sequences);
    for (std::size_t s = 0; s < num_sequences; ++s) {
        const std::size_t length = draw_length(rng, avg_length, static_cast<std::size_t>(-1));
        Sequence sequence;
        sequence.reserve(length);
        for (std::size_t k = 0; k < length; ++k) sequence.push_back(dataset.dictionary.intern(pool[pool_table.draw(rng)]));
        dataset.sequences.push_back(std::move(sequence));
    }
    return dataset;
}

}  // namespace bjdm
