#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bjdm/dataset.hpp"
#include "bjdm/mining.hpp"
#include "bjdm/samplers.hpp"

namespace bjdm {

/// Mean over observed patterns of |obs - sample| / obs. Throws
/// ValidationError when the lists are empty, differ in size, or an observed
/// support is zero.
double arsd(std::span<const std::uint32_t> observed_supports, std::span<const std::uint32_t> sample_supports);

/// Supports of the given patterns in another dataset.
std::vector<std::uint32_t> supports_in(const std::vector<ItemsetPattern>& patterns, const TransactionalDataset& dataset);
std::vector<std::uint32_t> supports_in(const std::vector<SequencePattern>& patterns, const SequenceDataset& dataset);

double arsd(const std::vector<ItemsetPattern>& observed, const TransactionalDataset& sample);
double arsd(const std::vector<SequencePattern>& observed, const SequenceDataset& sample);

enum class Direction { greater, less };

std::string_view to_string(Direction direction);
Direction parse_direction(std::string_view name);

struct PvalueReport {
    double observed = 0.0;
    std::size_t num_samples = 0;
    std::size_t count_extreme = 0;
    double p_hat = 1.0;
};

/// p = (1 + #{samples at least as extreme}) / (1 + T). `greater` counts
/// samples >= observed, `less` samples <= observed. Throws on T = 0.
PvalueReport empirical_pvalue(double observed, std::span<const double> samples, Direction direction = Direction::greater);

/// Largest attained min-p-value v with #{p <= v} <= floor(delta * T'). When
/// none qualifies, the largest double below the smallest min-p-value.
double wy_adjusted_critical_value(std::span<const double> min_pvalues, double delta);

/// Westfall-Young minimum p-values. outer[i][h] is the statistic of
/// hypothesis h on outer dataset i, inner[j][h] on inner dataset j; each
/// outer p-value is estimated against the inner datasets.
std::vector<double> wy_min_pvalues(const std::vector<std::vector<std::uint32_t>>& outer,
                                   const std::vector<std::vector<std::uint32_t>>& inner,
                                   Direction direction = Direction::greater);

/// One value of a per-sample statistic, keyed by sample index.
struct StatisticResult {
    std::size_t sample_index = 0;
    std::string statistic;
    double value = 0.0;
};

/// fi-count and fi-length-L statistics of one sample.
std::vector<StatisticResult> pattern_statistics(std::size_t sample_index, const std::map<std::size_t, std::size_t>& histogram);

/// sample_index,statistic,value rows with a header.
std::string statistics_csv(const std::vector<StatisticResult>& rows);

struct ConvergencePoint {
    double k = 0.0;
    std::uint64_t steps = 0;
    double arsd = 0.0;
    /// Chain time up to this checkpoint, mining excluded.
    double seconds = 0.0;
};

/// 0, 0.15, ..., 1.95, 2, 3, 4, 5, 6.
std::vector<double> default_k_grid();

/// One chain from the observed dataset, checkpointed whenever its step
/// count reaches floor(k * w) for the next k of the grid; ARSD against the
/// observed frequent patterns mined once up front. The grid must be
/// non-decreasing.
std::vector<ConvergencePoint> convergence_trace(const TransactionalDataset& observed, Algorithm algorithm,
                                                std::uint64_t seed, std::span<const double> k_grid,
                                                Threshold threshold);
std::vector<ConvergencePoint> convergence_trace(const SequenceDataset& observed, Algorithm algorithm,
                                                std::uint64_t seed, std::span<const double> k_grid,
                                                Threshold threshold);

nlohmann::json to_json(const PvalueReport& report);
nlohmann::json to_json(const std::vector<ConvergencePoint>& trace);

}  // namespace bjdm
