#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bjdm {

/// Everything one command needs. Round-trips through JSON (--config and
/// --print-config).
struct JobConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string format = "trans";  // trans | seq
    std::vector<std::string> algos;
    std::optional<std::uint64_t> swaps;
    std::optional<double> k;
    std::size_t samples = 1;
    std::optional<double> theta;
    std::uint64_t seed = 0;
    std::size_t parallelism = 1;
    std::string out;
    bool check_invariants = false;
    std::string direction = "greater";
    // significance: Westfall-Young nested resampling, off when either count is 0
    std::size_t wy_outer = 0;
    std::size_t wy_inner = 0;
    double delta = 0.05;
    // convergence
    std::vector<double> k_grid;
    // bench
    std::uint64_t bench_steps = 10000;
    // gen
    std::size_t gen_size = 1000;
    std::size_t gen_items = 100;
    double gen_avg_length = 10.0;
    std::size_t gen_itemsets = 200;
    double gen_avg_itemset_size = 1.0;
    double gen_zipf = 1.0;

    /// Throws ValidationError on inconsistent settings.
    void validate() const;
};

void to_json(nlohmann::json& j, const JobConfig& c);
void from_json(const nlohmann::json& j, JobConfig& c);

/// Worker count after the BJDM_SAMPLER_THREADS override.
std::size_t effective_parallelism(std::size_t requested);

/// Runs one command line (argv[0] excluded). Returns the process exit code:
/// 0 success, 2 validation error, 3 I/O error, 4 invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bjdm
