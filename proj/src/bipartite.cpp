#include "bjdm/bipartite.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "bjdm/errors.hpp"

namespace bjdm {

DegreeClasses::DegreeClasses(std::span<const std::uint32_t> degrees) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> grouped;
    for (std::uint32_t v = 0; v < degrees.size(); ++v)
        if (degrees[v] > 0) grouped[degrees[v]].push_back(v);
    std::uint64_t distinct = 0;
    std::uint64_t replacement = 0;
    for (auto& [degree, members] : grouped) {
        const std::uint64_t n = members.size();
        distinct += n * (n - 1) / 2;
        replacement += n * (n + 1) / 2;
        distinct_cumulative_.push_back(distinct);
        replacement_cumulative_.push_back(replacement);
        classes_.push_back({degree, std::move(members)});
    }
}

namespace {

std::size_t draw_cumulative(Rng& rng, const std::vector<std::uint64_t>& cumulative) {
    const std::uint64_t x = rng.uniform_index(cumulative.back());
    return static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
}

}  // namespace

const DegreeClasses::Class& DegreeClasses::draw_for_distinct_pair(Rng& rng) const {
    return classes_[draw_cumulative(rng, distinct_cumulative_)];
}

const DegreeClasses::Class& DegreeClasses::draw_for_pair_with_replacement(Rng& rng) const {
    return classes_[draw_cumulative(rng, replacement_cumulative_)];
}

const DegreeClasses::Class* DegreeClasses::find(std::uint32_t degree) const {
    auto it = std::lower_bound(classes_.begin(), classes_.end(), degree,
                               [](const Class& c, std::uint32_t d) { return c.degree < d; });
    return (it != classes_.end() && it->degree == degree) ? &*it : nullptr;
}

BiadjacencyState::BiadjacencyState(std::size_t num_rows, std::size_t num_cols) : rows_(num_rows), cols_(num_cols) {}

BiadjacencyState BiadjacencyState::from_dataset(const TransactionalDataset& dataset) {
    BiadjacencyState state(dataset.size(), dataset.num_items());
    for (std::uint32_t r = 0; r < dataset.size(); ++r) {
        state.rows_[r] = dataset.transactions[r];
        for (ItemId c : dataset.transactions[r]) state.cols_[c].push_back(r);
        state.num_edges_ += dataset.transactions[r].size();
    }
    return state;
}

std::vector<std::uint32_t> BiadjacencyState::row_sums() const {
    std::vector<std::uint32_t> sums(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) sums[r] = row_sum(r);
    return sums;
}

std::vector<std::uint32_t> BiadjacencyState::col_sums() const {
    std::vector<std::uint32_t> sums(cols_.size());
    for (std::size_t c = 0; c < cols_.size(); ++c) sums[c] = col_sum(c);
    return sums;
}

bool BiadjacencyState::has(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    return std::binary_search(row.begin(), row.end(), c);
}

namespace {

void sorted_insert(std::vector<std::uint32_t>& v, std::uint32_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) throw InvariantViolation("edge already present");
    v.insert(it, x);
}

void sorted_erase(std::vector<std::uint32_t>& v, std::uint32_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) throw InvariantViolation("edge not present");
    v.erase(it);
}

}  // namespace

void BiadjacencyState::add_edge(std::uint32_t r, std::uint32_t c) {
    sorted_insert(rows_[r], c);
    sorted_insert(cols_[c], r);
    ++num_edges_;
}

void BiadjacencyState::remove_edge(std::uint32_t r, std::uint32_t c) {
    sorted_erase(rows_[r], c);
    sorted_erase(cols_[c], r);
    --num_edges_;
}

TransactionalDataset BiadjacencyState::to_dataset(const std::vector<std::string>& item_labels) const {
    TransactionalDataset dataset;
    dataset.transactions = rows_;
    dataset.item_labels = item_labels;
    return dataset;
}

void BiadjacencyState::check_consistency() const {
    // Strictly increasing sets on both sides, every row entry found in its
    // column, and equal totals: then the column sets are the transpose.
    std::uint64_t row_edges = 0, col_edges = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
        const auto& row = rows_[r];
        if (std::adjacent_find(row.begin(), row.end(), std::greater_equal<>()) != row.end())
            throw InvariantViolation("row set not sorted");
        for (std::uint32_t c : row)
            if (c >= cols_.size() || !std::binary_search(cols_[c].begin(), cols_[c].end(), r))
                throw InvariantViolation("row and column sets disagree");
        row_edges += row.size();
    }
    for (const auto& col : cols_) {
        if (std::adjacent_find(col.begin(), col.end(), std::greater_equal<>()) != col.end())
            throw InvariantViolation("column set not sorted");
        col_edges += col.size();
    }
    if (row_edges != col_edges) throw InvariantViolation("row and column sets disagree");
    if (row_edges != num_edges_) throw InvariantViolation("edge count drift");
}

BipartiteMultigraph BipartiteMultigraph::from_dataset(const SequenceDataset& dataset) {
    BipartiteMultigraph g;
    g.ports_ = dataset.sequences;
    g.incidences_.resize(dataset.dictionary.size());
    g.slots_.resize(dataset.size());
    for (std::uint32_t v = 0; v < g.ports_.size(); ++v) {
        g.slots_[v].resize(g.ports_[v].size());
        for (std::uint32_t k = 0; k < g.ports_[v].size(); ++k) {
            auto& inc = g.incidences_[g.ports_[v][k]];
            g.slots_[v][k] = static_cast<std::uint32_t>(inc.size());
            inc.push_back({v, k});
        }
        g.num_edges_ += g.ports_[v].size();
    }
    return g;
}

std::vector<std::uint32_t> BipartiteMultigraph::left_degrees() const {
    std::vector<std::uint32_t> d(ports_.size());
    for (std::size_t v = 0; v < ports_.size(); ++v) d[v] = left_degree(v);
    return d;
}

std::vector<std::uint32_t> BipartiteMultigraph::right_degrees() const {
    std::vector<std::uint32_t> d(incidences_.size());
    for (std::size_t w = 0; w < incidences_.size(); ++w) d[w] = right_degree(w);
    return d;
}

void BipartiteMultigraph::swap_endpoints(PortRef first, PortRef second) {
    const ItemsetId c = ports_[first.left][first.port];
    const ItemsetId d = ports_[second.left][second.port];
    const std::uint32_t slot_first = slots_[first.left][first.port];
    const std::uint32_t slot_second = slots_[second.left][second.port];
    incidences_[c][slot_first] = second;
    incidences_[d][slot_second] = first;
    slots_[first.left][first.port] = slot_second;
    slots_[second.left][second.port] = slot_first;
    ports_[first.left][first.port] = d;
    ports_[second.left][second.port] = c;
}

SequenceDataset BipartiteMultigraph::to_dataset(const ItemsetDictionary& dictionary,
                                                const std::vector<std::string>& item_labels) const {
    SequenceDataset dataset;
    dataset.sequences = ports_;
    dataset.dictionary = dictionary;
    dataset.item_labels = item_labels;
    return dataset;
}

void BipartiteMultigraph::check_consistency() const {
    std::uint64_t edges = 0;
    for (std::uint32_t v = 0; v < ports_.size(); ++v) {
        for (std::uint32_t k = 0; k < ports_[v].size(); ++k) {
            const ItemsetId w = ports_[v][k];
            if (w >= incidences_.size()) throw InvariantViolation("port references unknown right vertex");
            const std::uint32_t slot = slots_[v][k];
            if (slot >= incidences_[w].size() || !(incidences_[w][slot] == PortRef{v, k}))
                throw InvariantViolation("port and incidence lists disagree");
        }
        edges += ports_[v].size();
    }
    std::uint64_t right_edges = 0;
    for (const auto& inc : incidences_) right_edges += inc.size();
    if (edges != num_edges_ || right_edges != num_edges_) throw InvariantViolation("edge count drift");
}

}  // namespace bjdm
