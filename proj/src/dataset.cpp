#include "bjdm/dataset.hpp"

#include <algorithm>

#include "bjdm/errors.hpp"

namespace bjdm {

std::uint64_t TransactionalDataset::total_length() const noexcept {
    std::uint64_t total = 0;
    for (const auto& t : transactions) total += t.size();
    return total;
}

void TransactionalDataset::validate() const {
    for (std::size_t i = 0; i < transactions.size(); ++i) {
        const auto& t = transactions[i];
        if (t.empty()) throw ValidationError("transaction " + std::to_string(i) + " is empty");
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (t[k] >= item_labels.size())
                throw ValidationError("transaction " + std::to_string(i) + " references unknown item");
            if (k > 0 && t[k - 1] >= t[k])
                throw ValidationError("transaction " + std::to_string(i) + " is not sorted and duplicate-free");
        }
    }
}

ItemsetId ItemsetDictionary::intern(const Itemset& content) {
    auto [it, inserted] = ids_.try_emplace(content, static_cast<ItemsetId>(contents_.size()));
    if (inserted) contents_.push_back(content);
    return it->second;
}

std::int64_t ItemsetDictionary::find(const Itemset& content) const {
    auto it = ids_.find(content);
    return it == ids_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::uint64_t SequenceDataset::total_length() const noexcept {
    std::uint64_t total = 0;
    for (const auto& s : sequences) total += s.size();
    return total;
}

void SequenceDataset::validate() const {
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        if (sequences[i].empty()) throw ValidationError("sequence " + std::to_string(i) + " is empty");
        for (ItemsetId id : sequences[i])
            if (id >= dictionary.size())
                throw ValidationError("sequence " + std::to_string(i) + " references unknown itemset");
    }
    for (const auto& content : dictionary.contents()) {
        if (content.empty()) throw ValidationError("dictionary holds an empty itemset");
        for (std::size_t k = 0; k < content.size(); ++k) {
            if (content[k] >= item_labels.size()) throw ValidationError("itemset references unknown item");
            if (k > 0 && content[k - 1] >= content[k]) throw ValidationError("itemset is not canonical");
        }
    }
}

namespace {

std::vector<std::string> label_itemset(const Itemset& items, const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    out.reserve(items.size());
    for (ItemId i : items) out.push_back(labels[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::vector<std::string>> canonical_form(const TransactionalDataset& dataset) {
    std::vector<std::vector<std::string>> out;
    out.reserve(dataset.size());
    for (const auto& t : dataset.transactions) out.push_back(label_itemset(t, dataset.item_labels));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::vector<std::string>>> canonical_form(const SequenceDataset& dataset) {
    std::vector<std::vector<std::vector<std::string>>> out;
    out.reserve(dataset.size());
    for (const auto& s : dataset.sequences) {
        std::vector<std::vector<std::string>> seq;
        seq.reserve(s.size());
        for (ItemsetId id : s) seq.push_back(label_itemset(dataset.dictionary.content(id), dataset.item_labels));
        out.push_back(std::move(seq));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::size_t, std::size_t> length_histogram(const TransactionalDataset& dataset) {
    std::map<std::size_t, std::size_t> h;
    for (const auto& t : dataset.transactions) ++h[t.size()];
    return h;
}

std::map<std::size_t, std::size_t> length_histogram(const SequenceDataset& dataset) {
    std::map<std::size_t, std::size_t> h;
    for (const auto& s : dataset.sequences) ++h[s.size()];
    return h;
}

std::vector<std::uint32_t> item_supports(const TransactionalDataset& dataset) {
    std::vector<std::uint32_t> support(dataset.num_items(), 0);
    for (const auto& t : dataset.transactions)
        for (ItemId i : t) ++support[i];
    return support;
}

std::vector<std::uint32_t> itemset_multi_supports(const SequenceDataset& dataset) {
    std::vector<std::uint32_t> support(dataset.dictionary.size(), 0);
    for (const auto& s : dataset.sequences)
        for (ItemsetId id : s) ++support[id];
    return support;
}

}  // namespace bjdm
