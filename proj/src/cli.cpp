#include "bjdm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "bjdm/bjdm.hpp"
#include "bjdm/dataset_io.hpp"
#include "bjdm/errors.hpp"
#include "bjdm/mining.hpp"
#include "bjdm/parallel.hpp"
#include "bjdm/samplers.hpp"
#include "bjdm/stats.hpp"
#include "bjdm/synthetic.hpp"

namespace bjdm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"sample", "convergence", "significance", "mine", "gen", "bench"};

bool is_sequence_format(const JobConfig& c) { return c.format == "seq"; }

}  // namespace

void JobConfig::validate() const {
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw ValidationError("unknown command '" + command + "'");
    if (format != "trans" && format != "seq") throw ValidationError("format must be 'trans' or 'seq'");
    if (swaps && k) throw ValidationError("--swaps and --k are mutually exclusive");
    if (k && !(*k >= 0.0)) throw ValidationError("--k must be non-negative");
    for (const auto& name : algos) {
        const Algorithm a = parse_algorithm(name);
        if (command != "mine" && command != "gen" && is_sequence_algorithm(a) != is_sequence_format(*this))
            throw ValidationError("sampler " + name + " does not apply to " +
                                  (is_sequence_format(*this) ? "sequence" : "transactional") + " datasets");
    }
    if (command != "gen" && inputs.empty()) throw ValidationError("--input is required");
    if (command != "gen" && command != "bench" && inputs.size() > 1)
        throw ValidationError("command " + command + " takes a single --input");
    if ((command == "mine" || command == "convergence" || command == "significance") && !theta)
        throw ValidationError("--theta is required for " + command);
    if (theta && !(*theta > 0.0)) throw ValidationError("--theta must be positive");
    if ((command == "sample" || command == "significance") && samples == 0)
        throw ValidationError("--samples must be at least 1");
    if (command == "sample" && out.empty()) throw ValidationError("--out (output directory) is required for sample");
    if (direction != "greater" && direction != "less") throw ValidationError("--direction must be greater or less");
    if ((wy_outer > 0 || wy_inner > 0) && !(delta > 0.0 && delta < 1.0))
        throw ValidationError("--delta must lie in (0, 1)");
    if (!std::is_sorted(k_grid.begin(), k_grid.end())) throw ValidationError("--k-grid must be non-decreasing");
    if (command == "bench" && bench_steps == 0) throw ValidationError("--bench-steps must be positive");
    if (command == "gen" && (gen_size == 0 || gen_items == 0 || gen_avg_length < 1.0))
        throw ValidationError("gen needs positive sizes and a mean length of at least 1");
}

void to_json(json& j, const JobConfig& c) {
    j = json{{"command", c.command},
             {"inputs", c.inputs},
             {"format", c.format},
             {"algos", c.algos},
             {"swaps", c.swaps ? json(*c.swaps) : json(nullptr)},
             {"k", c.k ? json(*c.k) : json(nullptr)},
             {"samples", c.samples},
             {"theta", c.theta ? json(*c.theta) : json(nullptr)},
             {"seed", c.seed},
             {"parallelism", c.parallelism},
             {"out", c.out},
             {"check_invariants", c.check_invariants},
             {"direction", c.direction},
             {"wy_outer", c.wy_outer},
             {"wy_inner", c.wy_inner},
             {"delta", c.delta},
             {"k_grid", c.k_grid},
             {"bench_steps", c.bench_steps},
             {"gen_size", c.gen_size},
             {"gen_items", c.gen_items},
             {"gen_avg_length", c.gen_avg_length},
             {"gen_itemsets", c.gen_itemsets},
             {"gen_avg_itemset_size", c.gen_avg_itemset_size},
             {"gen_zipf", c.gen_zipf}};
}

void from_json(const json& j, JobConfig& c) {
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(field);
    };
    auto get_optional = [&j](const char* key, auto& field) {
        using T = typename std::remove_reference_t<decltype(field)>::value_type;
        if (j.contains(key) && !j.at(key).is_null())
            field = j.at(key).get<T>();
        else
            field.reset();
    };
    get("command", c.command);
    get("inputs", c.inputs);
    get("format", c.format);
    get("algos", c.algos);
    get_optional("swaps", c.swaps);
    get_optional("k", c.k);
    get("samples", c.samples);
    get_optional("theta", c.theta);
    get("seed", c.seed);
    get("parallelism", c.parallelism);
    get("out", c.out);
    get("check_invariants", c.check_invariants);
    get("direction", c.direction);
    get("wy_outer", c.wy_outer);
    get("wy_inner", c.wy_inner);
    get("delta", c.delta);
    get("k_grid", c.k_grid);
    get("bench_steps", c.bench_steps);
    get("gen_size", c.gen_size);
    get("gen_items", c.gen_items);
    get("gen_avg_length", c.gen_avg_length);
    get("gen_itemsets", c.gen_itemsets);
    get("gen_avg_itemset_size", c.gen_avg_itemset_size);
    get("gen_zipf", c.gen_zipf);
}

std::size_t effective_parallelism(std::size_t requested) {
    if (const char* env = std::getenv("BJDM_SAMPLER_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw ValidationError("BJDM_SAMPLER_THREADS must be a positive integer");
    }
    return std::max<std::size_t>(1, requested);
}

namespace {

// Writes to --out when given, else to the command's stdout.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty() || path == "-") return;
        if (fs::path(path).has_parent_path()) {
            std::error_code ec;
            fs::create_directories(fs::path(path).parent_path(), ec);
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw IoError("cannot write " + path);
        stream_ = &file_;
    }
    std::ostream& operator*() { return *stream_; }
    void close() {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw IoError("failed writing output");
        }
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::vector<Algorithm> algorithms_of(const JobConfig& c, std::vector<Algorithm> defaults) {
    if (c.algos.empty()) return defaults;
    std::vector<Algorithm> out;
    for (const auto& name : c.algos) out.push_back(parse_algorithm(name));
    return out;
}

Algorithm single_algorithm(const JobConfig& c) {
    const auto algos =
        algorithms_of(c, {is_sequence_format(c) ? Algorithm::alice_s : Algorithm::alice_a});
    if (algos.size() != 1) throw ValidationError("command " + c.command + " takes a single --algo");
    return algos.front();
}

std::uint64_t resolve_swaps(const JobConfig& c, Algorithm algorithm, std::uint64_t w) {
    if (c.swaps) return *c.swaps;
    return steps_for_multiplier(c.k ? *c.k : default_step_multiplier(algorithm), w);
}

SamplerConfig sampler_config(const JobConfig& c, Algorithm algorithm, std::uint64_t w) {
    SamplerConfig s;
    s.algorithm = algorithm;
    s.num_swaps = resolve_swaps(c, algorithm, w);
    s.seed = c.seed;
    s.check_invariants = c.check_invariants;
    return s;
}

std::string hex(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << v;
    return out.str();
}

template <typename Dataset>
Dataset load(const std::string& path);
template <>
TransactionalDataset load(const std::string& path) { return load_transactional(path); }
template <>
SequenceDataset load(const std::string& path) { return load_sequential(path); }

void save(const TransactionalDataset& d, const fs::path& p) { save_transactional(d, p); }
void save(const SequenceDataset& d, const fs::path& p) { save_sequential(d, p); }

std::vector<ItemsetPattern> mine(const TransactionalDataset& d, Threshold t) { return mine_frequent_itemsets(d, t); }
std::vector<SequencePattern> mine(const SequenceDataset& d, Threshold t) { return mine_frequent_sequences(d, t); }

json histogram_json(const std::map<std::size_t, double>& h) {
    json j = json::object();
    for (const auto& [length, value] : h) j[std::to_string(length)] = value;
    return j;
}

// ---------------------------------------------------------------------------

template <typename Dataset>
int cmd_sample(const JobConfig& c, std::ostream& out) {
    const Dataset observed = load<Dataset>(c.inputs.front());
    const Algorithm algorithm = single_algorithm(c);
    const std::uint64_t w = step_unit(observed);
    const SamplerConfig config = sampler_config(c, algorithm, w);
    const std::uint64_t observed_checksum = bjdm_of(observed).checksum();

    const auto results = sample_many(observed, config, c.samples, effective_parallelism(c.parallelism));

    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw IoError("cannot create output directory " + c.out + ": " + ec.message());
    json manifest = {{"sampler", std::string(to_string(algorithm))},
                     {"seed", c.seed},
                     {"swaps", config.num_swaps},
                     {"w", w},
                     {"input", c.inputs.front()},
                     {"observed_bjdm_checksum", hex(observed_checksum)}};
    json chains = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::ostringstream name;
        name << "sample_" << std::setw(4) << std::setfill('0') << i << ".dat";
        save(r.dataset, fs::path(c.out) / name.str());
        const std::uint64_t checksum = bjdm_of(r.dataset).checksum();
        if (preserves_bjdm(algorithm) && checksum != observed_checksum)
            throw InvariantViolation("sample " + std::to_string(i) + " changed the BJDM");
        chains.push_back({{"index", i},
                          {"file", name.str()},
                          {"chain_seed", r.seed},
                          {"seconds", r.seconds},
                          {"bjdm_checksum", hex(checksum)},
                          {"accepted", r.stats.accepted},
                          {"rejected", r.stats.rejected},
                          {"self_loops", r.stats.self_loops}});
    }
    manifest["samples"] = chains;
    std::ofstream file(fs::path(c.out) / "manifest.json");
    if (!file) throw IoError("cannot write manifest in " + c.out);
    file << manifest.dump(2) << '\n';
    if (!file) throw IoError("failed writing manifest");
    out << "wrote " << results.size() << " samples to " << c.out << '\n';
    return 0;
}

template <typename Dataset>
int cmd_convergence(const JobConfig& c, std::ostream& stdout_stream) {
    const Dataset observed = load<Dataset>(c.inputs.front());
    const auto algos = algorithms_of(c, is_sequence_format(c) ? std::vector{Algorithm::alice_s}
                                                              : std::vector{Algorithm::alice_a, Algorithm::alice_b});
    const std::vector<double> grid = c.k_grid.empty() ? default_k_grid() : c.k_grid;
    const Threshold threshold = Threshold::parse(*c.theta);
    std::vector<std::vector<ConvergencePoint>> traces(algos.size());
    parallel_for(algos.size(), effective_parallelism(c.parallelism), [&](std::size_t i) {
        traces[i] = convergence_trace(observed, algos[i], derive_chain_seed(c.seed, i), grid, threshold);
    });
    Output out(c.out, stdout_stream);
    *out << "sampler,k,steps,arsd,seconds\n";
    *out << std::setprecision(10);
    for (std::size_t i = 0; i < algos.size(); ++i)
        for (const auto& p : traces[i])
            *out << to_string(algos[i]) << ',' << p.k << ',' << p.steps << ',' << p.arsd << ',' << p.seconds << '\n';
    out.close();
    return 0;
}

template <typename Dataset>
int cmd_significance(const JobConfig& c, std::ostream& stdout_stream) {
    const auto start = std::chrono::steady_clock::now();
    const Dataset observed = load<Dataset>(c.inputs.front());
    const Algorithm algorithm = single_algorithm(c);
    const Threshold threshold = Threshold::parse(*c.theta);
    const Direction direction = parse_direction(c.direction);
    const std::size_t workers = effective_parallelism(c.parallelism);
    const std::uint64_t w = step_unit(observed);
    SamplerConfig config = sampler_config(c, algorithm, w);

    const auto observed_patterns = mine(observed, threshold);
    const auto observed_hist = fi_length_histogram(observed_patterns);

    const auto results = sample_many(observed, config, c.samples, workers);
    std::vector<std::map<std::size_t, std::size_t>> hists(results.size());
    parallel_for(results.size(), workers,
                 [&](std::size_t i) { hists[i] = fi_length_histogram(mine(results[i].dataset, threshold)); });

    std::vector<double> counts;
    std::map<std::size_t, double> sampled_mean;
    for (const auto& h : hists) {
        double total = 0;
        for (const auto& [length, n] : h) {
            total += static_cast<double>(n);
            sampled_mean[length] += static_cast<double>(n);
        }
        counts.push_back(total);
    }
    for (auto& [length, sum] : sampled_mean) sum /= static_cast<double>(hists.size());
    double mean = 0;
    for (double x : counts) mean += x;
    mean /= static_cast<double>(counts.size());
    for (const auto& [length, n] : observed_hist) sampled_mean.try_emplace(length, 0.0);
    std::map<std::size_t, double> observed_lengths;
    for (const auto& [length, n] : observed_hist) observed_lengths[length] = static_cast<double>(n);

    const PvalueReport report =
        empirical_pvalue(static_cast<double>(observed_patterns.size()), counts, direction);
    json j = {{"sampler", std::string(to_string(algorithm))},
              {"input", c.inputs.front()},
              {"theta", *c.theta},
              {"min_support", threshold.min_support(observed.size())},
              {"samples", c.samples},
              {"swaps", config.num_swaps},
              {"seed", c.seed},
              {"direction", c.direction},
              {"observed_fi_count", observed_patterns.size()},
              {"mean_sampled_fi_count", mean},
              {"sampled_fi_counts", counts},
              {"pvalue", to_json(report)},
              {"fi_length", {{"observed", histogram_json(observed_lengths)}, {"sampled_mean", histogram_json(sampled_mean)}}}};

    if (c.wy_outer > 0 && c.wy_inner > 0 && !observed_patterns.empty()) {
        SamplerConfig outer_config = config, inner_config = config;
        outer_config.seed = mix64(c.seed ^ 0x6f75746572ULL);
        inner_config.seed = mix64(c.seed ^ 0x696e6e6572ULL);
        const auto outer = sample_many(observed, outer_config, c.wy_outer, workers);
        const auto inner = sample_many(observed, inner_config, c.wy_inner, workers);
        std::vector<std::vector<std::uint32_t>> outer_stats(outer.size()), inner_stats(inner.size());
        parallel_for(outer.size(), workers,
                     [&](std::size_t i) { outer_stats[i] = supports_in(observed_patterns, outer[i].dataset); });
        parallel_for(inner.size(), workers,
                     [&](std::size_t i) { inner_stats[i] = supports_in(observed_patterns, inner[i].dataset); });
        const auto min_p = wy_min_pvalues(outer_stats, inner_stats, direction);
        const double critical = wy_adjusted_critical_value(min_p, c.delta);
        std::vector<std::uint32_t> own;
        for (const auto& p : observed_patterns) own.push_back(p.support);
        std::size_t significant = 0;
        std::vector<double> column(inner_stats.size());
        for (std::size_t h = 0; h < own.size(); ++h) {
            for (std::size_t s = 0; s < inner_stats.size(); ++s) column[s] = inner_stats[s][h];
            if (empirical_pvalue(own[h], column, direction).p_hat <= critical) ++significant;
        }
        j["westfall_young"] = {{"outer", c.wy_outer},
                               {"inner", c.wy_inner},
                               {"delta", c.delta},
                               {"min_pvalues", min_p},
                               {"critical_value", critical},
                               {"significant_patterns", significant}};
    }
    j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Output out(c.out, stdout_stream);
    *out << j.dump(2) << '\n';
    out.close();
    return 0;
}

template <typename Dataset>
int cmd_mine(const JobConfig& c, std::ostream& stdout_stream) {
    const Dataset observed = load<Dataset>(c.inputs.front());
    const auto patterns = mine(observed, Threshold::parse(*c.theta));
    Output out(c.out, stdout_stream);
    *out << format_patterns(patterns, observed.item_labels);
    out.close();
    return 0;
}

int cmd_gen(const JobConfig& c, std::ostream& stdout_stream) {
    Output out(c.out, stdout_stream);
    if (is_sequence_format(c)) {
        SyntheticSequenceOptions o;
        o.num_itemsets = c.gen_itemsets;
        o.avg_itemset_size = c.gen_avg_itemset_size;
        o.zipf_exponent = c.gen_zipf;
        write_sequential(generate_synthetic_sequences(c.gen_size, c.gen_items, c.gen_avg_length, c.seed, o), *out);
    } else {
        SyntheticOptions o;
        o.zipf_exponent = c.gen_zipf;
        write_transactional(generate_synthetic(c.gen_size, c.gen_items, c.gen_avg_length, c.seed, o), *out);
    }
    out.close();
    return 0;
}

struct Latency {
    double min = 0, median = 0, p95 = 0, max = 0;
};

Latency summarize(std::vector<double>& micros) {
    std::sort(micros.begin(), micros.end());
    auto at = [&](double q) {
        const auto i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(micros.size()))) ;
        return micros[std::min(micros.size() - 1, i == 0 ? 0 : i - 1)];
    };
    return {micros.front(), at(0.5), at(0.95), micros.back()};
}

template <typename Chain, typename Dataset>
Latency time_steps(const Dataset& d, Algorithm a, std::uint64_t seed, std::uint64_t steps) {
    Chain chain(d, a, seed);
    std::vector<double> micros;
    micros.reserve(steps);
    for (std::uint64_t i = 0; i < steps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        chain.step();
        micros.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count());
    }
    return summarize(micros);
}

int cmd_bench(const JobConfig& c, std::ostream& stdout_stream) {
    const bool seq = is_sequence_format(c);
    const auto algos = algorithms_of(c, seq ? std::vector{Algorithm::alice_s, Algorithm::gmmt_s}
                                            : std::vector{Algorithm::alice_a, Algorithm::alice_b, Algorithm::gmmt});
    Output out(c.out, stdout_stream);
    *out << "sampler,dataset,size,edges,steps,min_us,median_us,p95_us,max_us\n" << std::setprecision(6);
    for (const auto& path : c.inputs) {
        std::size_t size = 0;
        std::uint64_t edges = 0;
        std::vector<Latency> rows;
        if (seq) {
            const auto d = load_sequential(path);
            size = d.size();
            edges = d.total_length();
            for (auto a : algos) rows.push_back(time_steps<SequenceChain>(d, a, c.seed, c.bench_steps));
        } else {
            const auto d = load_transactional(path);
            size = d.size();
            edges = d.total_length();
            for (auto a : algos) rows.push_back(time_steps<TransactionalChain>(d, a, c.seed, c.bench_steps));
        }
        for (std::size_t i = 0; i < algos.size(); ++i)
            *out << to_string(algos[i]) << ',' << path << ',' << size << ',' << edges << ',' << c.bench_steps << ','
                 << rows[i].min << ',' << rows[i].median << ',' << rows[i].p95 << ',' << rows[i].max << '\n';
    }
    out.close();
    return 0;
}

int dispatch(const JobConfig& c, std::ostream& out) {
    const bool seq = is_sequence_format(c);
    if (c.command == "sample") return seq ? cmd_sample<SequenceDataset>(c, out) : cmd_sample<TransactionalDataset>(c, out);
    if (c.command == "convergence")
        return seq ? cmd_convergence<SequenceDataset>(c, out) : cmd_convergence<TransactionalDataset>(c, out);
    if (c.command == "significance")
        return seq ? cmd_significance<SequenceDataset>(c, out) : cmd_significance<TransactionalDataset>(c, out);
    if (c.command == "mine") return seq ? cmd_mine<SequenceDataset>(c, out) : cmd_mine<TransactionalDataset>(c, out);
    if (c.command == "gen") return cmd_gen(c, out);
    return cmd_bench(c, out);
}

// Binds a CLI11 option to scratch storage and copies it into the config only
// when given, so flags override a --config file field by field.
class Binder {
public:
    template <typename V, typename Field>
    CLI::Option* option(CLI::App* app, const std::string& flags, Field JobConfig::*member, const std::string& help) {
        auto value = std::make_shared<V>();
        CLI::Option* opt = app->add_option(flags, *value, help);
        appliers_.push_back([opt, value, member](JobConfig& c) {
            if (opt->count() > 0) c.*member = *value;
        });
        return opt;
    }

    void flag(CLI::App* app, const std::string& flags, bool JobConfig::*member, const std::string& help) {
        auto value = std::make_shared<bool>(false);
        CLI::Option* opt = app->add_flag(flags, *value, help);
        appliers_.push_back([opt, value, member](JobConfig& c) {
            if (opt->count() > 0) c.*member = *value;
        });
    }

    void apply(JobConfig& c) const {
        for (const auto& f : appliers_) f(c);
    }

private:
    std::vector<std::function<void(JobConfig&)>> appliers_;
};

void add_common(CLI::App* sub, Binder& b) {
    b.option<std::vector<std::string>>(sub, "-i,--input", &JobConfig::inputs, "Input dataset (repeatable for bench)");
    b.option<std::string>(sub, "-f,--format", &JobConfig::format, "Dataset format: trans | seq")
        ->check(CLI::IsMember({"trans", "seq"}));
    b.option<std::vector<std::string>>(sub, "-a,--algo", &JobConfig::algos,
                                       "Sampler: alice-a | alice-b | alice-s | gmmt | gmmt-s | selfloop")
        ->delimiter(',');
    b.option<std::uint64_t>(sub, "--swaps", &JobConfig::swaps, "Number of chain steps s");
    b.option<double>(sub, "--k", &JobConfig::k, "Steps as a multiple of w (s = floor(k*w))");
    b.option<std::size_t>(sub, "-T,--samples", &JobConfig::samples, "Number of sampled datasets");
    b.option<double>(sub, "--theta", &JobConfig::theta, "Support threshold: fraction <= 1 or count >= 2");
    b.option<std::uint64_t>(sub, "--seed", &JobConfig::seed, "Master random seed");
    b.option<std::size_t>(sub, "-j,--parallelism", &JobConfig::parallelism, "Worker threads");
    b.option<std::string>(sub, "-o,--out", &JobConfig::out, "Output file (directory for sample)");
    b.flag(sub, "--check-invariants", &JobConfig::check_invariants, "Verify BJDM, margins and groups as the chain runs");
    b.option<std::string>(sub, "--direction", &JobConfig::direction, "More extreme means: greater | less");
    b.option<std::size_t>(sub, "--wy-outer", &JobConfig::wy_outer, "Westfall-Young outer datasets");
    b.option<std::size_t>(sub, "--wy-inner", &JobConfig::wy_inner, "Westfall-Young inner datasets per p-value");
    b.option<double>(sub, "--delta", &JobConfig::delta, "FWER target");
    b.option<std::vector<double>>(sub, "--k-grid", &JobConfig::k_grid, "Convergence checkpoints")->delimiter(',');
    b.option<std::uint64_t>(sub, "--bench-steps", &JobConfig::bench_steps, "Steps timed per sampler");
    b.option<std::size_t>(sub, "--size", &JobConfig::gen_size, "gen: number of transactions/sequences");
    b.option<std::size_t>(sub, "--items", &JobConfig::gen_items, "gen: alphabet size");
    b.option<double>(sub, "--avg-length", &JobConfig::gen_avg_length, "gen: mean transaction/sequence length");
    b.option<std::size_t>(sub, "--itemsets", &JobConfig::gen_itemsets, "gen: distinct itemsets (seq)");
    b.option<double>(sub, "--avg-itemset-size", &JobConfig::gen_avg_itemset_size, "gen: mean itemset size (seq)");
    b.option<double>(sub, "--zipf", &JobConfig::gen_zipf, "gen: item popularity exponent");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"BJDM-preserving null-model sampling and significance testing", "bjdm"};
    app.require_subcommand(1);
    std::string config_path;
    bool print_config = false;
    app.add_option("--config", config_path, "JSON job configuration; flags override its fields");
    app.add_flag("--print-config", print_config, "Print the resolved configuration as JSON and exit");

    std::vector<std::pair<CLI::App*, std::unique_ptr<Binder>>> subs;
    const std::vector<std::pair<std::string, std::string>> descriptions = {
        {"sample", "Draw datasets from the null model"},
        {"convergence", "ARSD along one chain over a grid of k"},
        {"significance", "Empirical p-value of the frequent-pattern count"},
        {"mine", "Mine frequent itemsets or sequential patterns"},
        {"gen", "Generate a synthetic dataset"},
        {"bench", "Per-step latency of samplers"}};
    for (const auto& [name, help] : descriptions) {
        auto binder = std::make_unique<Binder>();
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, *binder);
        subs.emplace_back(sub, std::move(binder));
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            for (const auto& [sub, binder] : subs)
                if (sub->parsed()) out << sub->help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        JobConfig config;
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw IoError("cannot read config " + config_path);
            try {
                config = json::parse(file).get<JobConfig>();
            } catch (const json::exception& e) {
                throw ValidationError(std::string("bad config file: ") + e.what());
            }
        }
        for (const auto& [sub, binder] : subs)
            if (sub->parsed()) {
                config.command = sub->get_name();
                binder->apply(config);
            }
        config.validate();
        if (print_config) {
            out << json(config).dump(2) << '\n';
            return 0;
        }
        return dispatch(config, out);
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return 4;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bjdm
