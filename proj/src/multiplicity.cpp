#include "bjdm/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "bjdm/errors.hpp"

namespace bjdm {

DuplicateGroups::DuplicateGroups(std::span<const Content> contents) {
    counts_.reserve(contents.size());
    for (const auto& c : contents) add(c);
}

std::uint32_t DuplicateGroups::count(const Content& content) const {
    auto it = counts_.find(content);
    return it == counts_.end() ? 0 : it->second;
}

void DuplicateGroups::add(const Content& content) {
    ++counts_[content];
    ++totals_[content.size()];
    ++size_;
}

void DuplicateGroups::remove(const Content& content) {
    auto it = counts_.find(content);
    if (it == counts_.end()) throw ValidationError("removing a transaction that is not in the dataset");
    if (--it->second == 0) counts_.erase(it);
    auto total = totals_.find(content.size());
    if (--total->second == 0) totals_.erase(total);
    --size_;
}

bool DuplicateGroups::describes(std::span<const Content> contents) const {
    if (contents.size() != size_) return false;
    std::vector<std::pair<std::uint64_t, const Content*>> keyed;
    keyed.reserve(contents.size());
    for (const auto& c : contents) keyed.emplace_back(hash_content(c), &c);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : *a.second < *b.second;
    });
    std::map<std::size_t, std::uint64_t> totals;
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < keyed.size();) {
        std::size_t j = i + 1;
        while (j < keyed.size() && keyed[j].first == keyed[i].first && *keyed[j].second == *keyed[i].second) ++j;
        if (count(*keyed[i].second) != j - i) return false;
        totals[keyed[i].second->size()] += j - i;
        ++distinct;
        i = j;
    }
    return distinct == counts_.size() && totals == totals_;
}

double log_num_matrices(const DuplicateGroups& groups) {
    double result = 0.0;
    for (const auto& [length, total] : groups.length_totals()) result += std::lgamma(static_cast<double>(total) + 1.0);
    for (const auto& [content, n] : groups.counts()) result -= std::lgamma(static_cast<double>(n) + 1.0);
    return result;
}

std::uint64_t num_matrices_exact(const DuplicateGroups& groups) {
    if (groups.size() > 20) throw ValidationError("exact multiplicity is limited to 20 transactions");
    // Multinomial per length as a product of binomials, each exact in 128 bits.
    std::map<std::size_t, std::vector<std::uint32_t>> by_length;
    for (const auto& [content, n] : groups.counts()) by_length[content.size()].push_back(n);
    unsigned __int128 q = 1;
    for (const auto& [length, sizes] : by_length) {
        std::uint64_t placed = 0;
        for (std::uint32_t n : sizes) {
            // C(placed + n, n)
            unsigned __int128 binom = 1;
            for (std::uint64_t k = 1; k <= n; ++k) binom = binom * (placed + k) / k;
            q *= binom;
            placed += n;
        }
    }
    return static_cast<std::uint64_t>(q);
}

namespace {

constexpr std::uint64_t kExactLimit = 1'000'000'000'000'000ULL;

}  // namespace

void TransitionRatio::multiply(std::uint64_t factor) {
    log_ += std::log(static_cast<double>(factor));
    if (exact_) {
        num_ *= factor;
        normalize();
    }
}

void TransitionRatio::divide(std::uint64_t factor) {
    log_ -= std::log(static_cast<double>(factor));
    if (exact_) {
        den_ *= factor;
        normalize();
    }
}

void TransitionRatio::normalize() {
    if (num_ < kExactLimit && den_ < kExactLimit) return;
    const std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
    if (num_ >= kExactLimit || den_ >= kExactLimit) exact_ = false;
}

double TransitionRatio::value() const noexcept {
    if (exact_) return static_cast<double>(num_) / static_cast<double>(den_);
    return std::exp(log_);
}

namespace {

struct ContentRefHash {
    std::size_t operator()(std::reference_wrapper<const Content> c) const noexcept { return ContentHash{}(c.get()); }
};
struct ContentRefEq {
    bool operator()(std::reference_wrapper<const Content> a, std::reference_wrapper<const Content> b) const noexcept {
        return a.get() == b.get();
    }
};

void check_lengths(std::span<const Content> removed, std::span<const Content> added) {
    if (removed.size() != added.size()) throw ValidationError("removed and added transactions do not pair up");
    std::map<std::size_t, std::int64_t> balance;
    for (const auto& c : removed) ++balance[c.size()];
    for (const auto& c : added) --balance[c.size()];
    for (const auto& [length, b] : balance)
        if (b != 0) throw ValidationError("move changes the transaction length distribution");
}

}  // namespace

TransitionRatio transition_ratio(const DuplicateGroups& groups, std::span<const Content> removed,
                                 std::span<const Content> added) {
    check_lengths(removed, added);
    std::unordered_map<std::reference_wrapper<const Content>, std::int64_t, ContentRefHash, ContentRefEq> overlay;
    overlay.reserve(removed.size() + added.size());
    auto current = [&](const Content& c) -> std::int64_t& {
        auto [it, inserted] = overlay.try_emplace(std::cref(c), 0);
        if (inserted) it->second = groups.count(c);
        return it->second;
    };

    TransitionRatio ratio;
    for (const auto& c : removed) {
        auto& n = current(c);
        if (n <= 0) throw ValidationError("removing a transaction that is not in the dataset");
        ratio.divide(static_cast<std::uint64_t>(n));
        --n;
    }
    for (const auto& c : added) {
        auto& n = current(c);
        ++n;
        ratio.multiply(static_cast<std::uint64_t>(n));
    }
    return ratio;
}

void apply_update(DuplicateGroups& groups, std::span<const Content> removed, std::span<const Content> added) {
    check_lengths(removed, added);
    for (const auto& c : removed) groups.remove(c);
    for (const auto& c : added) groups.add(c);
}

}  // namespace bjdm
