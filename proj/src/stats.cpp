#include "bjdm/stats.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <sstream>

#include "bjdm/errors.hpp"

namespace bjdm {

double arsd(std::span<const std::uint32_t> observed_supports, std::span<const std::uint32_t> sample_supports) {
    if (observed_supports.empty()) throw ValidationError("ARSD needs at least one observed pattern");
    if (observed_supports.size() != sample_supports.size())
        throw ValidationError("ARSD support lists differ in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < observed_supports.size(); ++i) {
        if (observed_supports[i] == 0) throw ValidationError("ARSD needs positive observed supports");
        const double o = observed_supports[i];
        sum += std::abs(o - static_cast<double>(sample_supports[i])) / o;
    }
    return sum / static_cast<double>(observed_supports.size());
}

std::vector<std::uint32_t> supports_in(const std::vector<ItemsetPattern>& patterns, const TransactionalDataset& dataset) {
    // Item bitmaps over transactions, AND-ed per pattern.
    const std::size_t words = (dataset.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bitmap(dataset.num_items());
    auto bits_of = [&](ItemId i) -> std::vector<std::uint64_t>& {
        if (bitmap[i].empty()) bitmap[i].assign(words, 0);
        return bitmap[i];
    };
    std::vector<bool> wanted(dataset.num_items(), false);
    for (const auto& p : patterns)
        for (ItemId i : p.items)
            if (i < wanted.size()) wanted[i] = true;
    for (std::uint32_t tid = 0; tid < dataset.size(); ++tid)
        for (ItemId i : dataset.transactions[tid])
            if (wanted[i]) bits_of(i)[tid / 64] |= std::uint64_t{1} << (tid % 64);

    std::vector<std::uint32_t> out;
    out.reserve(patterns.size());
    std::vector<std::uint64_t> acc;
    for (const auto& p : patterns) {
        if (p.items.empty()) {
            out.push_back(static_cast<std::uint32_t>(dataset.size()));
            continue;
        }
        bool absent = false;
        for (ItemId i : p.items) absent = absent || i >= dataset.num_items() || bitmap[i].empty();
        if (absent) {
            out.push_back(0);
            continue;
        }
        acc = bitmap[p.items[0]];
        for (std::size_t k = 1; k < p.items.size(); ++k)
            for (std::size_t w = 0; w < words; ++w) acc[w] &= bitmap[p.items[k]][w];
        std::uint32_t count = 0;
        for (auto w : acc) count += static_cast<std::uint32_t>(std::popcount(w));
        out.push_back(count);
    }
    return out;
}

std::vector<std::uint32_t> supports_in(const std::vector<SequencePattern>& patterns, const SequenceDataset& dataset) {
    std::vector<std::uint32_t> out;
    out.reserve(patterns.size());
    for (const auto& p : patterns) out.push_back(support(dataset, p.itemsets));
    return out;
}

namespace {

template <typename Pattern>
std::vector<std::uint32_t> own_supports(const std::vector<Pattern>& patterns) {
    std::vector<std::uint32_t> out;
    out.reserve(patterns.size());
    for (const auto& p : patterns) out.push_back(p.support);
    return out;
}

}  // namespace

double arsd(const std::vector<ItemsetPattern>& observed, const TransactionalDataset& sample) {
    return arsd(own_supports(observed), supports_in(observed, sample));
}

double arsd(const std::vector<SequencePattern>& observed, const SequenceDataset& sample) {
    return arsd(own_supports(observed), supports_in(observed, sample));
}

std::string_view to_string(Direction direction) { return direction == Direction::greater ? "greater" : "less"; }

Direction parse_direction(std::string_view name) {
    if (name == "greater") return Direction::greater;
    if (name == "less") return Direction::less;
    throw ValidationError("direction must be 'greater' or 'less'");
}

PvalueReport empirical_pvalue(double observed, std::span<const double> samples, Direction direction) {
    if (samples.empty()) throw ValidationError("p-value needs at least one sample");
    PvalueReport r;
    r.observed = observed;
    r.num_samples = samples.size();
    for (double s : samples)
        if (direction == Direction::greater ? s >= observed : s <= observed) ++r.count_extreme;
    r.p_hat = (1.0 + static_cast<double>(r.count_extreme)) / (1.0 + static_cast<double>(r.num_samples));
    return r;
}

double wy_adjusted_critical_value(std::span<const double> min_pvalues, double delta) {
    if (min_pvalues.empty()) throw ValidationError("need at least one minimum p-value");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("FWER target must lie in (0, 1)");
    std::vector<double> p(min_pvalues.begin(), min_pvalues.end());
    std::sort(p.begin(), p.end());
    const auto allowed = static_cast<std::size_t>(std::floor(delta * static_cast<double>(p.size())));
    // Walk down from the allowed-th smallest value past any ties with the next one.
    for (std::size_t i = std::min(allowed, p.size()); i > 0; --i) {
        const double v = p[i - 1];
        if (i == p.size() || p[i] > v) return v;
    }
    return std::nextafter(p.front(), 0.0);
}

std::vector<double> wy_min_pvalues(const std::vector<std::vector<std::uint32_t>>& outer,
                                   const std::vector<std::vector<std::uint32_t>>& inner, Direction direction) {
    if (inner.empty()) throw ValidationError("need at least one inner sample");
    std::vector<double> out;
    out.reserve(outer.size());
    std::vector<double> column(inner.size());
    for (const auto& stats : outer) {
        double best = 1.0;
        for (std::size_t h = 0; h < stats.size(); ++h) {
            for (std::size_t j = 0; j < inner.size(); ++j) column[j] = inner[j].at(h);
            best = std::min(best, empirical_pvalue(stats[h], column, direction).p_hat);
        }
        out.push_back(best);
    }
    return out;
}

std::vector<StatisticResult> pattern_statistics(std::size_t sample_index,
                                                const std::map<std::size_t, std::size_t>& histogram) {
    std::vector<StatisticResult> rows;
    std::size_t total = 0;
    for (const auto& [length, count] : histogram) total += count;
    rows.push_back({sample_index, "fi-count", static_cast<double>(total)});
    for (const auto& [length, count] : histogram)
        rows.push_back({sample_index, "fi-length-" + std::to_string(length), static_cast<double>(count)});
    return rows;
}

std::string statistics_csv(const std::vector<StatisticResult>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "sample_index,statistic,value\n";
    for (const auto& r : rows) out << r.sample_index << ',' << r.statistic << ',' << r.value << '\n';
    return out.str();
}

std::vector<double> default_k_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 13; ++i) grid.push_back(0.15 * i);
    for (int k = 2; k <= 6; ++k) grid.push_back(k);
    return grid;
}

namespace {

template <typename Chain, typename Dataset, typename Mine>
std::vector<ConvergencePoint> trace(const Dataset& observed, Algorithm algorithm, std::uint64_t seed,
                                    std::span<const double> k_grid, Threshold threshold, Mine mine) {
    if (!std::is_sorted(k_grid.begin(), k_grid.end())) throw ValidationError("k grid must be non-decreasing");
    const auto patterns = mine(observed, threshold);
    if (patterns.empty()) throw ValidationError("no frequent patterns in the observed dataset at this threshold");
    const std::uint64_t w = step_unit(observed);
    Chain chain(observed, algorithm, seed);
    std::vector<ConvergencePoint> out;
    double seconds = 0.0;
    for (double k : k_grid) {
        const std::uint64_t target = steps_for_multiplier(k, w);
        const auto start = std::chrono::steady_clock::now();
        if (target > chain.stats().steps) chain.run(target - chain.stats().steps);
        seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back({k, chain.stats().steps, arsd(patterns, chain.dataset()), seconds});
    }
    return out;
}

}  // namespace

std::vector<ConvergencePoint> convergence_trace(const TransactionalDataset& observed, Algorithm algorithm,
                                                std::uint64_t seed, std::span<const double> k_grid,
                                                Threshold threshold) {
    return trace<TransactionalChain>(observed, algorithm, seed, k_grid, threshold,
                                     [](const auto& d, Threshold t) { return mine_frequent_itemsets(d, t); });
}

std::vector<ConvergencePoint> convergence_trace(const SequenceDataset& observed, Algorithm algorithm,
                                                std::uint64_t seed, std::span<const double> k_grid,
                                                Threshold threshold) {
    return trace<SequenceChain>(observed, algorithm, seed, k_grid, threshold,
                                [](const auto& d, Threshold t) { return mine_frequent_sequences(d, t); });
}

nlohmann::json to_json(const PvalueReport& report) {
    return {{"observed", report.observed},
            {"num_samples", report.num_samples},
            {"count_extreme", report.count_extreme},
            {"p_hat", report.p_hat}};
}

nlohmann::json to_json(const std::vector<ConvergencePoint>& trace) {
    auto rows = nlohmann::json::array();
    for (const auto& p : trace)
        rows.push_back({{"k", p.k}, {"steps", p.steps}, {"arsd", p.arsd}, {"seconds", p.seconds}});
    return rows;
}

}  // namespace bjdm
