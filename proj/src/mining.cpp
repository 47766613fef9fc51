#include "bjdm/mining.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "bjdm/errors.hpp"

namespace bjdm {

Threshold Threshold::parse(double value) {
    if (value <= 1.0 || value != std::floor(value)) return fraction(value);
    return absolute(value);
}

std::uint32_t Threshold::min_support(std::size_t n) const {
    if (!(value > 0.0)) throw ValidationError("support threshold must be positive");
    if (fractional) {
        if (value > 1.0) throw ValidationError("fractional support threshold must be at most 1");
        const double count = std::ceil(value * static_cast<double>(n) - 1e-9);
        return static_cast<std::uint32_t>(std::max(1.0, count));
    }
    if (value > static_cast<double>(n)) throw ValidationError("support threshold exceeds the number of transactions");
    return static_cast<std::uint32_t>(std::ceil(value));
}

std::uint32_t support(const TransactionalDataset& dataset, const Itemset& itemset) {
    std::uint32_t count = 0;
    for (const auto& t : dataset.transactions)
        if (std::includes(t.begin(), t.end(), itemset.begin(), itemset.end())) ++count;
    return count;
}

bool contains(const SequenceDataset& dataset, const Sequence& sequence, const std::vector<Itemset>& pattern) {
    // Greedy leftmost matching is optimal for subsequence containment.
    std::size_t next = 0;
    for (const auto& wanted : pattern) {
        bool matched = false;
        while (next < sequence.size() && !matched) {
            const auto& got = dataset.dictionary.content(sequence[next++]);
            matched = std::includes(got.begin(), got.end(), wanted.begin(), wanted.end());
        }
        if (!matched) return false;
    }
    return true;
}

std::uint32_t support(const SequenceDataset& dataset, const std::vector<Itemset>& pattern) {
    std::uint32_t count = 0;
    for (const auto& s : dataset.sequences)
        if (contains(dataset, s, pattern)) ++count;
    return count;
}

namespace {

// Tidset as a bitmap over transactions.
struct BitTids {
    std::vector<std::uint64_t> words;
    std::uint32_t count = 0;

    static BitTids intersect(const BitTids& a, const BitTids& b) {
        BitTids out;
        out.words.resize(a.words.size());
        for (std::size_t i = 0; i < a.words.size(); ++i) {
            out.words[i] = a.words[i] & b.words[i];
            out.count += static_cast<std::uint32_t>(std::popcount(out.words[i]));
        }
        return out;
    }
};

// Tidset as a sorted list of transaction ids.
struct ListTids {
    std::vector<std::uint32_t> ids;
    std::uint32_t count = 0;

    static ListTids intersect(const ListTids& a, const ListTids& b) {
        ListTids out;
        std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(), std::back_inserter(out.ids));
        out.count = static_cast<std::uint32_t>(out.ids.size());
        return out;
    }
};

template <typename Tids>
void eclat(Itemset& prefix, std::vector<std::pair<ItemId, Tids>>& candidates, std::uint32_t minsup,
           std::vector<ItemsetPattern>& out) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        prefix.push_back(candidates[i].first);
        out.push_back({prefix, candidates[i].second.count});
        std::vector<std::pair<ItemId, Tids>> next;
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            Tids t = Tids::intersect(candidates[i].second, candidates[j].second);
            if (t.count >= minsup) next.emplace_back(candidates[j].first, std::move(t));
        }
        if (!next.empty()) eclat(prefix, next, minsup, out);
        prefix.pop_back();
    }
}

template <typename Tids>
std::vector<std::pair<ItemId, Tids>> initial_tidsets(const TransactionalDataset& dataset,
                                                     const std::vector<std::uint32_t>& supports,
                                                     std::uint32_t minsup) {
    std::vector<std::pair<ItemId, Tids>> items;
    std::vector<std::int64_t> slot(dataset.num_items(), -1);
    for (ItemId i = 0; i < dataset.num_items(); ++i) {
        if (supports[i] < minsup) continue;
        slot[i] = static_cast<std::int64_t>(items.size());
        Tids t;
        t.count = supports[i];
        if constexpr (std::is_same_v<Tids, BitTids>) t.words.assign((dataset.size() + 63) / 64, 0);
        items.emplace_back(i, std::move(t));
    }
    for (std::uint32_t tid = 0; tid < dataset.size(); ++tid)
        for (ItemId i : dataset.transactions[tid]) {
            if (slot[i] < 0) continue;
            auto& t = items[static_cast<std::size_t>(slot[i])].second;
            if constexpr (std::is_same_v<Tids, BitTids>)
                t.words[tid / 64] |= std::uint64_t{1} << (tid % 64);
            else
                t.ids.push_back(tid);
        }
    // Rarest first keeps the intermediate tidsets small.
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second.count < b.second.count; });
    return items;
}

bool itemset_order(const ItemsetPattern& a, const ItemsetPattern& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
}

}  // namespace

std::vector<ItemsetPattern> mine_frequent_itemsets(const TransactionalDataset& dataset, Threshold threshold) {
    const std::uint32_t minsup = threshold.min_support(dataset.size());
    const auto supports = item_supports(dataset);
    std::vector<ItemsetPattern> out;
    Itemset prefix;
    const double cells = static_cast<double>(dataset.size()) * static_cast<double>(std::max<std::size_t>(1, dataset.num_items()));
    if (static_cast<double>(dataset.total_length()) / cells > 1.0 / 32.0) {
        auto items = initial_tidsets<BitTids>(dataset, supports, minsup);
        eclat(prefix, items, minsup, out);
    } else {
        auto items = initial_tidsets<ListTids>(dataset, supports, minsup);
        eclat(prefix, items, minsup, out);
    }
    for (auto& p : out) std::sort(p.items.begin(), p.items.end());
    std::sort(out.begin(), out.end(), itemset_order);
    return out;
}

namespace {

// Occurrences of the current pattern in one sequence: positions where its
// last itemset can be matched after an embedding of the earlier itemsets.
struct Projection {
    std::uint32_t sequence;
    std::vector<std::uint32_t> ends;
};

class SequenceMiner {
public:
    SequenceMiner(const SequenceDataset& dataset, std::uint32_t minsup) : data_(dataset), minsup_(minsup) {}

    std::vector<SequencePattern> run() {
        std::map<ItemId, std::vector<Projection>> starts;
        for (std::uint32_t s = 0; s < data_.sequences.size(); ++s) {
            const auto& seq = data_.sequences[s];
            for (std::uint32_t p = 0; p < seq.size(); ++p)
                for (ItemId x : content(s, p)) {
                    auto& list = starts[x];
                    if (list.empty() || list.back().sequence != s) list.push_back({s, {}});
                    list.back().ends.push_back(p);
                }
        }
        for (auto& [x, proj] : starts) {
            if (proj.size() < minsup_) continue;
            pattern_.push_back({x});
            grow(proj);
            pattern_.pop_back();
        }
        std::sort(out_.begin(), out_.end(), [](const SequencePattern& a, const SequencePattern& b) {
            if (a.itemsets.size() != b.itemsets.size()) return a.itemsets.size() < b.itemsets.size();
            return a.itemsets < b.itemsets;
        });
        return std::move(out_);
    }

private:
    const Itemset& content(std::uint32_t s, std::uint32_t p) const {
        return data_.dictionary.content(data_.sequences[s][p]);
    }

    void grow(const std::vector<Projection>& proj) {
        out_.push_back({pattern_, static_cast<std::uint32_t>(proj.size())});
        const ItemId last = pattern_.back().back();

        // Itemset extensions: add an item larger than the last one to the
        // last itemset, keeping only the end positions that hold it.
        std::map<ItemId, std::vector<Projection>> inside;
        for (const auto& pr : proj)
            for (std::uint32_t p : pr.ends) {
                const auto& items = content(pr.sequence, p);
                for (auto it = std::upper_bound(items.begin(), items.end(), last); it != items.end(); ++it) {
                    auto& list = inside[*it];
                    if (list.empty() || list.back().sequence != pr.sequence) list.push_back({pr.sequence, {}});
                    list.back().ends.push_back(p);
                }
            }
        for (auto& [x, next] : inside) {
            if (next.size() < minsup_) continue;
            pattern_.back().push_back(x);
            grow(next);
            pattern_.back().pop_back();
        }

        // Sequence extensions: a new itemset {x} after the earliest end.
        std::map<ItemId, std::vector<Projection>> after;
        for (const auto& pr : proj) {
            const std::uint32_t first = pr.ends.front();
            const auto& seq = data_.sequences[pr.sequence];
            for (auto p = first + 1; p < seq.size(); ++p)
                for (ItemId x : content(pr.sequence, p)) {
                    auto& list = after[x];
                    if (list.empty() || list.back().sequence != pr.sequence) list.push_back({pr.sequence, {}});
                    list.back().ends.push_back(p);
                }
        }
        for (auto& [x, next] : after) {
            if (next.size() < minsup_) continue;
            pattern_.push_back({x});
            grow(next);
            pattern_.pop_back();
        }
    }

    const SequenceDataset& data_;
    std::uint32_t minsup_;
    std::vector<Itemset> pattern_;
    std::vector<SequencePattern> out_;
};

}  // namespace

std::vector<SequencePattern> mine_frequent_sequences(const SequenceDataset& dataset, Threshold threshold) {
    const std::uint32_t minsup = threshold.min_support(dataset.size());
    return SequenceMiner(dataset, minsup).run();
}

std::map<std::size_t, std::size_t> fi_length_histogram(const std::vector<ItemsetPattern>& patterns) {
    std::map<std::size_t, std::size_t> h;
    for (const auto& p : patterns) ++h[p.length()];
    return h;
}

std::map<std::size_t, std::size_t> fi_length_histogram(const std::vector<SequencePattern>& patterns) {
    std::map<std::size_t, std::size_t> h;
    for (const auto& p : patterns) ++h[p.length()];
    return h;
}

namespace {

void write_itemset(std::ostream& out, const Itemset& items, const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? " " : "") << labels.at(items[i]);
}

}  // namespace

std::string format_patterns(const std::vector<ItemsetPattern>& patterns, const std::vector<std::string>& labels) {
    std::ostringstream out;
    for (const auto& p : patterns) {
        write_itemset(out, p.items, labels);
        out << " #SUP: " << p.support << '\n';
    }
    return out.str();
}

std::string format_patterns(const std::vector<SequencePattern>& patterns, const std::vector<std::string>& labels) {
    std::ostringstream out;
    for (const auto& p : patterns) {
        for (std::size_t k = 0; k < p.itemsets.size(); ++k) {
            if (k) out << " -1 ";
            write_itemset(out, p.itemsets[k], labels);
        }
        out << " #SUP: " << p.support << '\n';
    }
    return out.str();
}

}  // namespace bjdm
