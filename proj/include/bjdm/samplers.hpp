#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bjdm/bipartite.hpp"
#include "bjdm/bjdm.hpp"
#include "bjdm/dataset.hpp"
#include "bjdm/multiplicity.hpp"
#include "bjdm/random.hpp"

namespace bjdm {

enum class Algorithm { alice_a, alice_b, alice_s, gmmt, gmmt_s, selfloop };

std::string_view to_string(Algorithm algorithm);
/// Accepts alice-a | alice-b | alice-s | gmmt | gmmt-s | selfloop.
Algorithm parse_algorithm(std::string_view name);
bool is_sequence_algorithm(Algorithm algorithm);
/// Whether the sampler preserves the BJDM (the Alice family and SelfLoop).
bool preserves_bjdm(Algorithm algorithm);
/// Step multiplier k used when neither --swaps nor --k is given; s = floor(k * w).
double default_step_multiplier(Algorithm algorithm);

enum class MoveKind { self_loop, rso, rrbso, crbso, mrso, gmmt_swap };

std::string_view to_string(MoveKind kind);

/// Edit of one matrix row: columns that flip 1 -> 0 and 0 -> 1, both sorted.
struct RowEdit {
    std::uint32_t row;
    std::vector<std::uint32_t> removed;
    std::vector<std::uint32_t> added;
    friend bool operator==(const RowEdit&, const RowEdit&) = default;
};

/// A proposed move. Transactional moves are lists of row edits; multigraph
/// moves exchange the right endpoints of two port-edges.
struct Proposal {
    MoveKind kind = MoveKind::self_loop;
    std::vector<RowEdit> row_edits;
    PortRef first{};
    PortRef second{};
    /// ln(nu_{M'}(M) / nu_M(M')). Zero for symmetric proposal kernels.
    double log_proposal_ratio = 0.0;

    bool is_self_loop() const noexcept { return kind == MoveKind::self_loop; }
    /// The move that undoes this one from the resulting state.
    Proposal inverse() const;
};

/// RSO (a,c),(b,d) -> (a,d),(b,c) on rows a, b and columns c, d.
Proposal make_rso(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d);

/// RBSO (a, b, U): on rows a, b when `rows`, else on columns a, b. U must be a
/// subset of Z_a ∪ Z_b with |U| = |Z_a|, where Z_a holds the neighbours of a
/// that b lacks. Afterwards a's neighbours are the common ones plus U.
/// U = Z_a gives a self-loop.
Proposal make_rbso(const BiadjacencyState& state, bool rows, std::uint32_t a, std::uint32_t b,
                   std::vector<std::uint32_t> u);

/// ln(w(D') / w(D)) for a target weight that factorizes over transactions,
/// evaluated on the contents a move removes and adds. Empty = uniform.
using LogWeightRatio = std::function<double(std::span<const Content> removed, std::span<const Content> added)>;

struct SamplerConfig {
    Algorithm algorithm = Algorithm::alice_a;
    std::uint64_t num_swaps = 0;
    std::uint64_t seed = 0;
    LogWeightRatio log_weight_ratio;
    /// Verify BJDM, margins, and duplicate groups after every step (touched
    /// rows and columns each step, the whole state every 1024 steps).
    bool check_invariants = false;
};

/// Counters of one chain run.
struct ChainStats {
    std::uint64_t steps = 0;
    std::uint64_t self_loops = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
};

/// Markov chain over biadjacency matrices of a transactional dataset.
/// Single-writer: one chain owns its state, groups, and random stream.
class TransactionalChain {
public:
    TransactionalChain(const TransactionalDataset& observed, Algorithm algorithm, std::uint64_t seed,
                       LogWeightRatio log_weight_ratio = {});

    Algorithm algorithm() const noexcept { return algorithm_; }

    /// Proposal of the configured algorithm.
    Proposal propose();
    Proposal propose_alice_a();
    Proposal propose_alice_b();
    Proposal propose_gmmt();
    Proposal propose_selfloop_naive();

    /// Metropolis-Hastings decision on a proposal generated from the current
    /// state; commits it when accepted. Self-loops count as accepted.
    bool mh_step(const Proposal& proposal);

    /// One proposal plus MH decision.
    bool step();
    void run(std::uint64_t steps, bool check_invariants = false);

    /// Q(D)/Q(D') of a proposal against the current state.
    TransitionRatio transition_ratio_of(const Proposal& proposal) const;
    /// Commits a proposal without an MH decision.
    void apply(const Proposal& proposal);

    const BiadjacencyState& state() const noexcept { return state_; }
    const DuplicateGroups& groups() const noexcept { return groups_; }
    const Bjdm& observed_bjdm() const noexcept { return observed_bjdm_; }
    const ChainStats& stats() const noexcept { return stats_; }
    Rng& rng() noexcept { return rng_; }

    TransactionalDataset dataset() const { return state_.to_dataset(item_labels_); }

    /// Throws InvariantViolation on BJDM drift (BJDM-preserving samplers),
    /// margin drift, or inconsistent duplicate groups.
    void check_invariants() const;
    /// The same checks restricted to what a just-applied move touched.
    void check_move(const Proposal& applied) const;

private:
    void contents_of(const Proposal& proposal, std::vector<Content>& removed, std::vector<Content>& added) const;

    Algorithm algorithm_;
    std::vector<std::string> item_labels_;
    BiadjacencyState state_;
    DuplicateGroups groups_;
    DegreeClasses row_classes_;
    DegreeClasses col_classes_;
    std::vector<std::uint64_t> edge_cumulative_;
    std::vector<std::uint32_t> row_sums_;
    std::vector<std::uint32_t> col_sums_;
    Bjdm observed_bjdm_;
    Rng rng_;
    LogWeightRatio log_weight_ratio_;
    ChainStats stats_;
    // Scratch buffers reused across steps.
    std::vector<std::uint32_t> z_first_;
    std::vector<std::uint32_t> z_second_;
    std::vector<Content> removed_;
    std::vector<Content> added_;
};

/// Markov chain over port-labeled bipartite multigraphs of a sequence dataset.
class SequenceChain {
public:
    SequenceChain(const SequenceDataset& observed, Algorithm algorithm, std::uint64_t seed,
                  LogWeightRatio log_weight_ratio = {});

    Algorithm algorithm() const noexcept { return algorithm_; }

    Proposal propose();
    Proposal propose_alice_s();
    Proposal propose_gmmt_s();

    bool mh_step(const Proposal& proposal);
    bool step();
    void run(std::uint64_t steps, bool check_invariants = false);

    TransitionRatio transition_ratio_of(const Proposal& proposal) const;
    void apply(const Proposal& proposal);

    /// Probability that the Alice-S kernel proposes the move (a,x,c),(b,y,d)
    /// -> (a,x,d),(b,y,c) from the current state, up to a factor shared by
    /// every move of the chain. Exposed for tests of the proposal ratio.
    double alice_s_proposal_weight(PortRef first, PortRef second) const;

    const BipartiteMultigraph& graph() const noexcept { return graph_; }
    const DuplicateGroups& groups() const noexcept { return groups_; }
    const Bjdm& observed_bjdm() const noexcept { return observed_bjdm_; }
    const ChainStats& stats() const noexcept { return stats_; }
    Rng& rng() noexcept { return rng_; }

    SequenceDataset dataset() const { return graph_.to_dataset(dictionary_, item_labels_); }

    void check_invariants() const;
    void check_move(const Proposal& applied) const;

private:
    /// |H_{a,b}| = deg(a) deg(b) - sum_w mult_a(w) mult_b(w).
    std::uint64_t distinct_endpoint_pairs(std::uint32_t a, std::uint32_t b) const;
    double left_branch_weight(std::uint32_t degree, std::uint64_t pairs) const;
    double right_branch_weight(std::uint32_t degree) const;
    double proposal_log_ratio(PortRef first, PortRef second) const;
    void contents_of(const Proposal& proposal, std::vector<Content>& removed, std::vector<Content>& added) const;

    Algorithm algorithm_;
    ItemsetDictionary dictionary_;
    std::vector<std::string> item_labels_;
    BipartiteMultigraph graph_;
    DuplicateGroups groups_;
    DegreeClasses left_classes_;
    DegreeClasses right_classes_;
    std::vector<std::uint64_t> edge_cumulative_;
    std::vector<std::uint32_t> left_degrees_;
    std::vector<std::uint32_t> right_degrees_;
    Bjdm observed_bjdm_;
    Rng rng_;
    LogWeightRatio log_weight_ratio_;
    ChainStats stats_;
    std::vector<Content> removed_;
    std::vector<Content> added_;
};

/// Output of one chain.
template <typename Dataset>
struct ChainResult {
    Dataset dataset;
    ChainStats stats;
    double seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Runs config.num_swaps steps from the observed dataset and returns the
/// final state as a dataset. Sequence algorithms on transactional data (and
/// vice versa) throw ValidationError.
ChainResult<TransactionalDataset> run_chain(const TransactionalDataset& observed, const SamplerConfig& config);
ChainResult<SequenceDataset> run_chain(const SequenceDataset& observed, const SamplerConfig& config);

/// T independent chains; chain i is seeded with derive_chain_seed(config.seed, i)
/// and results are ordered by chain index whatever the parallelism.
std::vector<ChainResult<TransactionalDataset>> sample_many(const TransactionalDataset& observed,
                                                           const SamplerConfig& config, std::size_t num_samples,
                                                           std::size_t parallelism);
std::vector<ChainResult<SequenceDataset>> sample_many(const SequenceDataset& observed, const SamplerConfig& config,
                                                      std::size_t num_samples, std::size_t parallelism);

/// w: number of ones of the matrix / edges of the multigraph.
std::uint64_t step_unit(const TransactionalDataset& dataset);
std::uint64_t step_unit(const SequenceDataset& dataset);

/// floor(k * w).
std::uint64_t steps_for_multiplier(double k, std::uint64_t w);

}  // namespace bjdm
