#include "bjdm/bjdm.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "bjdm/errors.hpp"

namespace bjdm {

std::uint64_t Bjdm::total() const noexcept {
    std::uint64_t sum = 0;
    for (auto e : entries_) sum += e;
    return sum;
}

std::uint64_t Bjdm::checksum() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    feed(max_left_);
    feed(max_right_);
    for (auto e : entries_) feed(e);
    return h;
}

std::string Bjdm::to_csv() const {
    std::ostringstream out;
    out << "left_degree";
    for (std::uint32_t j = 1; j <= max_right_; ++j) out << ',' << j;
    out << '\n';
    for (std::uint32_t i = 1; i <= max_left_; ++i) {
        out << i;
        for (std::uint32_t j = 1; j <= max_right_; ++j) out << ',' << at(i, j);
        out << '\n';
    }
    return out.str();
}

namespace {

std::uint32_t max_of(const std::vector<std::uint32_t>& v) {
    return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

Bjdm bjdm_of(const BiadjacencyState& state) {
    const auto row_sums = state.row_sums();
    const auto col_sums = state.col_sums();
    Bjdm j(max_of(row_sums), max_of(col_sums));
    for (std::uint32_t r = 0; r < state.num_rows(); ++r)
        for (std::uint32_t c : state.row(r)) ++j.at(row_sums[r], col_sums[c]);
    return j;
}

Bjdm bjdm_of(const BipartiteMultigraph& graph) {
    const auto left = graph.left_degrees();
    const auto right = graph.right_degrees();
    Bjdm j(max_of(left), max_of(right));
    for (std::uint32_t v = 0; v < graph.num_left(); ++v)
        for (ItemsetId w : graph.ports(v)) ++j.at(left[v], right[w]);
    return j;
}

Bjdm bjdm_of(const TransactionalDataset& dataset) { return bjdm_of(BiadjacencyState::from_dataset(dataset)); }

Bjdm bjdm_of(const SequenceDataset& dataset) { return bjdm_of(BipartiteMultigraph::from_dataset(dataset)); }

std::uint64_t caterpillars_from_bjdm(const Bjdm& bjdm) {
    std::uint64_t total = 0;
    for (std::uint32_t i = 2; i <= bjdm.max_left(); ++i)
        for (std::uint32_t j = 2; j <= bjdm.max_right(); ++j)
            total += bjdm.at(i, j) * (i - 1) * (j - 1);
    return total;
}

std::uint64_t caterpillars_direct(const BiadjacencyState& state) {
    std::uint64_t total = 0;
    for (std::uint32_t r = 0; r < state.num_rows(); ++r) {
        const std::uint64_t du = state.row_sum(r);
        if (du < 2) continue;
        for (std::uint32_t c : state.row(r)) total += (du - 1) * (state.col_sum(c) - 1);
    }
    return total;
}

DegreeHistograms degree_histograms(const Bjdm& bjdm) {
    DegreeHistograms h;
    for (std::uint32_t i = 1; i <= bjdm.max_left(); ++i) {
        std::uint64_t sum = 0;
        for (std::uint32_t j = 1; j <= bjdm.max_right(); ++j) sum += bjdm.at(i, j);
        if (sum % i != 0) throw ValidationError("invalid BJDM: left degree " + std::to_string(i) + " row sum not divisible");
        if (sum > 0) h.left[i] = sum / i;
    }
    for (std::uint32_t j = 1; j <= bjdm.max_right(); ++j) {
        std::uint64_t sum = 0;
        for (std::uint32_t i = 1; i <= bjdm.max_left(); ++i) sum += bjdm.at(i, j);
        if (sum % j != 0)
            throw ValidationError("invalid BJDM: right degree " + std::to_string(j) + " column sum not divisible");
        if (sum > 0) h.right[j] = sum / j;
    }
    return h;
}

namespace {

DegreeHistograms histograms_from(const std::vector<std::uint32_t>& left, const std::vector<std::uint32_t>& right) {
    DegreeHistograms h;
    for (auto d : left)
        if (d > 0) ++h.left[d];
    for (auto d : right)
        if (d > 0) ++h.right[d];
    return h;
}

}  // namespace

DegreeHistograms degree_histograms(const BiadjacencyState& state) {
    return histograms_from(state.row_sums(), state.col_sums());
}

DegreeHistograms degree_histograms(const BipartiteMultigraph& graph) {
    return histograms_from(graph.left_degrees(), graph.right_degrees());
}

std::uint64_t count_l3_paths(const BipartiteMultigraph& graph) {
    std::uint64_t total = 0;
    std::unordered_map<ItemsetId, std::uint64_t> multiplicity;
    for (std::uint32_t v = 0; v < graph.num_left(); ++v) {
        const std::uint64_t du = graph.left_degree(v);
        multiplicity.clear();
        for (ItemsetId w : graph.ports(v)) ++multiplicity[w];
        for (ItemsetId w : graph.ports(v)) {
            const std::uint64_t dv = graph.right_degree(w);
            total += (du - 1) * (dv - 1) - (multiplicity[w] - 1);
        }
    }
    return total;
}

}  // namespace bjdm
