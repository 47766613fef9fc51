#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bjdm/dataset.hpp"
#include "bjdm/random.hpp"

namespace bjdm {

/// Vertices of one side grouped by degree. Built once per chain: every move
/// in scope preserves all degrees, so the classes never change afterwards.
class DegreeClasses {
public:
    struct Class {
        std::uint32_t degree;
        std::vector<std::uint32_t> members;
    };

    DegreeClasses() = default;
    /// Vertices of degree zero are left out.
    explicit DegreeClasses(std::span<const std::uint32_t> degrees);

    const std::vector<Class>& classes() const noexcept { return classes_; }

    /// Number of unordered pairs of distinct same-degree vertices.
    std::uint64_t distinct_pair_total() const noexcept {
        return distinct_cumulative_.empty() ? 0 : distinct_cumulative_.back();
    }
    /// Number of unordered pairs of not-necessarily-distinct same-degree vertices.
    std::uint64_t with_replacement_total() const noexcept {
        return replacement_cumulative_.empty() ? 0 : replacement_cumulative_.back();
    }

    /// Class drawn with probability C(|class|, 2) / distinct_pair_total().
    /// Requires distinct_pair_total() > 0.
    const Class& draw_for_distinct_pair(Rng& rng) const;
    /// Class drawn with probability C(|class| + 1, 2) / with_replacement_total().
    const Class& draw_for_pair_with_replacement(Rng& rng) const;

    /// Class of the given degree, or nullptr.
    const Class* find(std::uint32_t degree) const;

private:
    std::vector<Class> classes_;
    std::vector<std::uint64_t> distinct_cumulative_;
    std::vector<std::uint64_t> replacement_cumulative_;
};

/// Chain state for transactional datasets: the sparse binary biadjacency
/// matrix, stored as sorted index sets per row and per column.
class BiadjacencyState {
public:
    BiadjacencyState() = default;
    BiadjacencyState(std::size_t num_rows, std::size_t num_cols);
    static BiadjacencyState from_dataset(const TransactionalDataset& dataset);

    std::size_t num_rows() const noexcept { return rows_.size(); }
    std::size_t num_cols() const noexcept { return cols_.size(); }
    std::uint64_t num_edges() const noexcept { return num_edges_; }

    const std::vector<std::uint32_t>& row(std::size_t r) const { return rows_[r]; }
    const std::vector<std::uint32_t>& col(std::size_t c) const { return cols_[c]; }
    const std::vector<std::vector<std::uint32_t>>& rows() const noexcept { return rows_; }
    std::uint32_t row_sum(std::size_t r) const { return static_cast<std::uint32_t>(rows_[r].size()); }
    std::uint32_t col_sum(std::size_t c) const { return static_cast<std::uint32_t>(cols_[c].size()); }
    std::vector<std::uint32_t> row_sums() const;
    std::vector<std::uint32_t> col_sums() const;

    bool has(std::uint32_t r, std::uint32_t c) const;

    /// Flip a 0 to 1 / a 1 to 0. Throws InvariantViolation on misuse.
    void add_edge(std::uint32_t r, std::uint32_t c);
    void remove_edge(std::uint32_t r, std::uint32_t c);

    /// Degree classes A_m (rows) and B_n (columns), snapshot of the current sums.
    DegreeClasses row_classes() const { return DegreeClasses(row_sums()); }
    DegreeClasses col_classes() const { return DegreeClasses(col_sums()); }

    /// Rows as transactions, in row order.
    TransactionalDataset to_dataset(const std::vector<std::string>& item_labels) const;

    /// Throws InvariantViolation unless rows and columns are consistent transposes.
    void check_consistency() const;

    friend bool operator==(const BiadjacencyState&, const BiadjacencyState&) = default;

private:
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::vector<std::uint32_t>> cols_;
    std::uint64_t num_edges_ = 0;
};

/// One edge endpoint on the left side: port `port` of left vertex `left`.
struct PortRef {
    std::uint32_t left;
    std::uint32_t port;
    friend bool operator==(const PortRef&, const PortRef&) = default;
};

/// Chain state for sequence datasets: a bipartite multigraph whose left
/// vertices are the sequences, each with ordered ports, and whose right
/// vertices are the distinct itemsets. Edge (v, k, w) exists iff port k of
/// v holds itemset w.
class BipartiteMultigraph {
public:
    BipartiteMultigraph() = default;
    static BipartiteMultigraph from_dataset(const SequenceDataset& dataset);

    std::size_t num_left() const noexcept { return ports_.size(); }
    std::size_t num_right() const noexcept { return incidences_.size(); }
    std::uint64_t num_edges() const noexcept { return num_edges_; }

    const std::vector<ItemsetId>& ports(std::size_t v) const { return ports_[v]; }
    const std::vector<Sequence>& all_ports() const noexcept { return ports_; }
    ItemsetId endpoint(PortRef e) const { return ports_[e.left][e.port]; }
    /// Incidences of right vertex w in no particular order.
    const std::vector<PortRef>& incidences(std::size_t w) const { return incidences_[w]; }

    std::uint32_t left_degree(std::size_t v) const { return static_cast<std::uint32_t>(ports_[v].size()); }
    std::uint32_t right_degree(std::size_t w) const { return static_cast<std::uint32_t>(incidences_[w].size()); }
    std::vector<std::uint32_t> left_degrees() const;
    std::vector<std::uint32_t> right_degrees() const;

    DegreeClasses left_classes() const { return DegreeClasses(left_degrees()); }
    DegreeClasses right_classes() const { return DegreeClasses(right_degrees()); }

    /// (a,x,c),(b,y,d) -> (a,x,d),(b,y,c). Self-inverse and in place, so
    /// applying it twice restores the state exactly.
    void swap_endpoints(PortRef first, PortRef second);

    /// Sequences in left-vertex order over the given dictionary.
    SequenceDataset to_dataset(const ItemsetDictionary& dictionary, const std::vector<std::string>& item_labels) const;

    void check_consistency() const;

    friend bool operator==(const BipartiteMultigraph&, const BipartiteMultigraph&) = default;

private:
    std::vector<std::vector<ItemsetId>> ports_;
    std::vector<std::vector<PortRef>> incidences_;
    // slots_[v][k] = index of (v, k) inside incidences_[ports_[v][k]].
    std::vector<std::vector<std::uint32_t>> slots_;
    std::uint64_t num_edges_ = 0;
};

}  // namespace bjdm
