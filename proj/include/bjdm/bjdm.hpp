#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bjdm/bipartite.hpp"

namespace bjdm {

/// Bipartite Joint Degree Matrix: entry (i, j), with 1-based degrees, counts
/// the edges joining a left vertex of degree i to a right vertex of degree j.
/// Stored dense, max_left x max_right.
class Bjdm {
public:
    Bjdm() = default;
    Bjdm(std::uint32_t max_left, std::uint32_t max_right)
        : max_left_(max_left), max_right_(max_right),
          entries_(static_cast<std::size_t>(max_left) * max_right, 0) {}

    std::uint32_t max_left() const noexcept { return max_left_; }
    std::uint32_t max_right() const noexcept { return max_right_; }

    std::uint64_t at(std::uint32_t i, std::uint32_t j) const { return entries_[index(i, j)]; }
    std::uint64_t& at(std::uint32_t i, std::uint32_t j) { return entries_[index(i, j)]; }

    /// Sum of all entries, i.e. the number of edges.
    std::uint64_t total() const noexcept;

    /// FNV-1a over the dimensions and entries; equal matrices share it.
    std::uint64_t checksum() const noexcept;

    /// One CSV row per left degree, one column per right degree.
    std::string to_csv() const;

    friend bool operator==(const Bjdm&, const Bjdm&) = default;

private:
    std::size_t index(std::uint32_t i, std::uint32_t j) const {
        return static_cast<std::size_t>(i - 1) * max_right_ + (j - 1);
    }

    std::uint32_t max_left_ = 0;
    std::uint32_t max_right_ = 0;
    std::vector<std::uint64_t> entries_;
};

Bjdm bjdm_of(const BiadjacencyState& state);
Bjdm bjdm_of(const BipartiteMultigraph& graph);
Bjdm bjdm_of(const TransactionalDataset& dataset);
Bjdm bjdm_of(const SequenceDataset& dataset);

/// Caterpillars (simple paths of length three) from the BJDM:
/// sum over i, j >= 2 of J[i,j] (i-1)(j-1).
std::uint64_t caterpillars_from_bjdm(const Bjdm& bjdm);

/// Same count by summing (deg(u)-1)(deg(v)-1) over the edges.
std::uint64_t caterpillars_direct(const BiadjacencyState& state);

struct DegreeHistograms {
    std::map<std::uint32_t, std::uint64_t> left;   // degree -> vertex count
    std::map<std::uint32_t, std::uint64_t> right;
    friend bool operator==(const DegreeHistograms&, const DegreeHistograms&) = default;
};

/// Vertex counts per degree recovered from the BJDM by exact division.
/// Throws ValidationError when a division leaves a remainder.
DegreeHistograms degree_histograms(const Bjdm& bjdm);

/// Degree histograms read directly from a state.
DegreeHistograms degree_histograms(const BiadjacencyState& state);
DegreeHistograms degree_histograms(const BipartiteMultigraph& graph);

/// Paths made of three distinct edges e1-e2-e3 in a multigraph, where
/// consecutive edges share an endpoint and e1, e3 hang off opposite ends of
/// e2. A path and its reverse count once (each path is counted at its
/// middle edge): sum over edges (u,v) of (deg u - 1)(deg v - 1) - (mult(u,v) - 1).
std::uint64_t count_l3_paths(const BipartiteMultigraph& graph);

}  // namespace bjdm
