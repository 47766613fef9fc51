#include "bjdm/samplers.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>

#include "bjdm/errors.hpp"
#include "bjdm/parallel.hpp"
#include "bjdm/reservoir.hpp"

namespace bjdm {

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::alice_a: return "alice-a";
        case Algorithm::alice_b: return "alice-b";
        case Algorithm::alice_s: return "alice-s";
        case Algorithm::gmmt: return "gmmt";
        case Algorithm::gmmt_s: return "gmmt-s";
        case Algorithm::selfloop: return "selfloop";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::alice_a, Algorithm::alice_b, Algorithm::alice_s, Algorithm::gmmt, Algorithm::gmmt_s,
                   Algorithm::selfloop})
        if (to_string(a) == name) return a;
    throw ValidationError("unknown sampler '" + std::string(name) + "'");
}

bool is_sequence_algorithm(Algorithm algorithm) {
    return algorithm == Algorithm::alice_s || algorithm == Algorithm::gmmt_s;
}

bool preserves_bjdm(Algorithm algorithm) {
    return algorithm != Algorithm::gmmt && algorithm != Algorithm::gmmt_s;
}

double default_step_multiplier(Algorithm algorithm) { return algorithm == Algorithm::alice_b ? 2.0 : 4.0; }

std::string_view to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::self_loop: return "self-loop";
        case MoveKind::rso: return "rso";
        case MoveKind::rrbso: return "rrbso";
        case MoveKind::crbso: return "crbso";
        case MoveKind::mrso: return "mrso";
        case MoveKind::gmmt_swap: return "gmmt-swap";
    }
    return "?";
}

Proposal Proposal::inverse() const {
    Proposal p = *this;
    for (auto& e : p.row_edits) std::swap(e.removed, e.added);
    // Port swaps are self-inverse: the same two ports exchange back.
    p.log_proposal_ratio = -log_proposal_ratio;
    return p;
}

namespace {

// Steps between full invariant checks when checking is on; every step in
// between verifies only the rows and columns the move touched.
constexpr std::uint64_t kFullCheckInterval = 1024;

// out = a \ b for sorted a, b.
void sorted_difference(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                       std::vector<std::uint32_t>& out) {
    out.clear();
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

Content edited(const std::vector<std::uint32_t>& row, const RowEdit& edit) {
    Content kept;
    kept.reserve(row.size());
    std::set_difference(row.begin(), row.end(), edit.removed.begin(), edit.removed.end(), std::back_inserter(kept));
    Content out;
    out.reserve(row.size());
    std::merge(kept.begin(), kept.end(), edit.added.begin(), edit.added.end(), std::back_inserter(out));
    return out;
}

std::vector<std::uint64_t> prefix_sums(const std::vector<std::uint32_t>& v) {
    std::vector<std::uint64_t> out(v.size());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = acc += v[i];
    return out;
}

// Vertex owning edge number x in [0, total) under a cumulative degree table,
// and the offset of that edge inside the vertex.
std::pair<std::uint32_t, std::uint32_t> locate_edge(const std::vector<std::uint64_t>& cumulative, std::uint64_t x) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    const auto v = static_cast<std::uint32_t>(it - cumulative.begin());
    const std::uint64_t before = v == 0 ? 0 : cumulative[v - 1];
    return {v, static_cast<std::uint32_t>(x - before)};
}

bool mh_accept(Rng& rng, const TransitionRatio& ratio, double extra_log) {
    double r = ratio.exact() ? ratio.value() : std::exp(ratio.log_value());
    if (extra_log != 0.0) r *= std::exp(extra_log);
    if (r >= 1.0) return true;
    return rng.uniform01() < r;
}

}  // namespace

Proposal make_rso(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    Proposal p;
    p.kind = MoveKind::rso;
    p.row_edits = {{a, {c}, {d}}, {b, {d}, {c}}};
    return p;
}

namespace {

// RBSO from Z_a and the sorted subset U.
Proposal rbso_from(bool rows, std::uint32_t a, std::uint32_t b, const std::vector<std::uint32_t>& z_a,
                   const std::vector<std::uint32_t>& u) {
    Proposal p;
    // a keeps Z_a ∩ U and gains U ∩ Z_b; b gets the rest.
    std::vector<std::uint32_t> a_loses, a_gains;
    sorted_difference(z_a, u, a_loses);
    if (a_loses.empty()) return p;  // U = Z_a: identity move
    sorted_difference(u, z_a, a_gains);
    if (rows) {
        p.kind = MoveKind::rrbso;
        p.row_edits = {{a, a_loses, a_gains}, {b, a_gains, a_loses}};
        return p;
    }
    // Columns a and b: rows in U ∩ Z_b move from b to a, rows in Z_a \ U
    // move from a to b.
    p.kind = MoveKind::crbso;
    p.row_edits.reserve(a_loses.size() + a_gains.size());
    std::size_t x = 0, y = 0;
    while (x < a_gains.size() || y < a_loses.size()) {
        if (y == a_loses.size() || (x < a_gains.size() && a_gains[x] < a_loses[y]))
            p.row_edits.push_back({a_gains[x++], {b}, {a}});
        else
            p.row_edits.push_back({a_loses[y++], {a}, {b}});
    }
    return p;
}

}  // namespace

Proposal make_rbso(const BiadjacencyState& state, bool rows, std::uint32_t a, std::uint32_t b,
                   std::vector<std::uint32_t> u) {
    const auto& va = rows ? state.row(a) : state.col(a);
    const auto& vb = rows ? state.row(b) : state.col(b);
    std::vector<std::uint32_t> z_a, z_b, pool;
    sorted_difference(va, vb, z_a);
    sorted_difference(vb, va, z_b);
    std::merge(z_a.begin(), z_a.end(), z_b.begin(), z_b.end(), std::back_inserter(pool));
    std::sort(u.begin(), u.end());
    if (u.size() != z_a.size() || !std::includes(pool.begin(), pool.end(), u.begin(), u.end()) ||
        std::adjacent_find(u.begin(), u.end()) != u.end())
        throw ValidationError("U must be a subset of Z_a and Z_b of size |Z_a|");
    return rbso_from(rows, a, b, z_a, u);
}

// ---------------------------------------------------------------------------
// TransactionalChain

TransactionalChain::TransactionalChain(const TransactionalDataset& observed, Algorithm algorithm, std::uint64_t seed,
                                       LogWeightRatio log_weight_ratio)
    : algorithm_(algorithm),
      item_labels_(observed.item_labels),
      state_(BiadjacencyState::from_dataset(observed)),
      groups_(DuplicateGroups::of(observed)),
      rng_(seed),
      log_weight_ratio_(std::move(log_weight_ratio)) {
    if (is_sequence_algorithm(algorithm))
        throw ValidationError("sampler " + std::string(to_string(algorithm)) + " needs a sequence dataset");
    row_sums_ = state_.row_sums();
    col_sums_ = state_.col_sums();
    row_classes_ = DegreeClasses(row_sums_);
    col_classes_ = DegreeClasses(col_sums_);
    edge_cumulative_ = prefix_sums(row_sums_);
    observed_bjdm_ = bjdm_of(state_);
}

Proposal TransactionalChain::propose() {
    switch (algorithm_) {
        case Algorithm::alice_a: return propose_alice_a();
        case Algorithm::alice_b: return propose_alice_b();
        case Algorithm::gmmt: return propose_gmmt();
        case Algorithm::selfloop: return propose_selfloop_naive();
        default: break;
    }
    throw ValidationError("sampler does not apply to transactional datasets");
}

Proposal TransactionalChain::propose_alice_a() {
    Proposal p;
    if (rng_.coin()) {
        if (row_classes_.distinct_pair_total() == 0) return p;
        const auto& cls = row_classes_.draw_for_distinct_pair(rng_);
        const auto [i, j] = rng_.distinct_pair(cls.members.size());
        const std::uint32_t a = cls.members[i], b = cls.members[j];
        sorted_difference(state_.row(a), state_.row(b), z_first_);
        if (z_first_.empty()) return p;
        sorted_difference(state_.row(b), state_.row(a), z_second_);
        const std::uint32_t c = z_first_[rng_.uniform_index(z_first_.size())];
        const std::uint32_t d = z_second_[rng_.uniform_index(z_second_.size())];
        return make_rso(a, b, c, d);
    } else {
        if (col_classes_.distinct_pair_total() == 0) return p;
        const auto& cls = col_classes_.draw_for_distinct_pair(rng_);
        const auto [i, j] = rng_.distinct_pair(cls.members.size());
        const std::uint32_t c = cls.members[i], d = cls.members[j];
        sorted_difference(state_.col(c), state_.col(d), z_first_);
        if (z_first_.empty()) return p;
        sorted_difference(state_.col(d), state_.col(c), z_second_);
        const std::uint32_t a = z_first_[rng_.uniform_index(z_first_.size())];
        const std::uint32_t b = z_second_[rng_.uniform_index(z_second_.size())];
        return make_rso(a, b, c, d);
    }
}

Proposal TransactionalChain::propose_alice_b() {
    Proposal p;
    const bool rows = rng_.coin();
    const DegreeClasses& classes = rows ? row_classes_ : col_classes_;
    if (classes.distinct_pair_total() == 0) return p;
    const auto& cls = classes.draw_for_distinct_pair(rng_);
    const auto [i, j] = rng_.distinct_pair(cls.members.size());
    const std::uint32_t a = cls.members[i], b = cls.members[j];
    const auto& va = rows ? state_.row(a) : state_.col(a);
    const auto& vb = rows ? state_.row(b) : state_.col(b);
    sorted_difference(va, vb, z_first_);
    if (z_first_.empty()) return p;
    sorted_difference(vb, va, z_second_);

    std::vector<std::uint32_t> pool;
    pool.reserve(z_first_.size() + z_second_.size());
    std::merge(z_first_.begin(), z_first_.end(), z_second_.begin(), z_second_.end(), std::back_inserter(pool));
    std::vector<std::uint32_t> chosen;
    reservoir_sample<std::uint32_t>(pool, z_first_.size(), rng_, chosen);
    std::sort(chosen.begin(), chosen.end());
    return rbso_from(rows, a, b, z_first_, chosen);
}

Proposal TransactionalChain::propose_gmmt() {
    Proposal p;
    const std::uint64_t edges = state_.num_edges();
    if (edges == 0) return p;
    const auto [a, ka] = locate_edge(edge_cumulative_, rng_.uniform_index(edges));
    const auto [b, kb] = locate_edge(edge_cumulative_, rng_.uniform_index(edges));
    const std::uint32_t c = state_.row(a)[ka];
    const std::uint32_t d = state_.row(b)[kb];
    if (a == b || c == d || state_.has(a, d) || state_.has(b, c)) return p;
    p.kind = MoveKind::gmmt_swap;
    p.row_edits = {{a, {c}, {d}}, {b, {d}, {c}}};
    return p;
}

Proposal TransactionalChain::propose_selfloop_naive() {
    Proposal p;
    if (state_.num_rows() == 0 || state_.num_cols() == 0) return p;
    const auto a = static_cast<std::uint32_t>(rng_.uniform_index(state_.num_rows()));
    const auto b = static_cast<std::uint32_t>(rng_.uniform_index(state_.num_rows()));
    const auto c = static_cast<std::uint32_t>(rng_.uniform_index(state_.num_cols()));
    const auto d = static_cast<std::uint32_t>(rng_.uniform_index(state_.num_cols()));
    if (a == b || c == d) return p;
    if (row_sums_[a] != row_sums_[b] && col_sums_[c] != col_sums_[d]) return p;
    if (!state_.has(a, c) || !state_.has(b, d) || state_.has(a, d) || state_.has(b, c)) return p;
    return make_rso(a, b, c, d);
}

void TransactionalChain::contents_of(const Proposal& proposal, std::vector<Content>& removed,
                                     std::vector<Content>& added) const {
    removed.clear();
    added.clear();
    for (const auto& edit : proposal.row_edits) {
        const auto& row = state_.row(edit.row);
        removed.push_back(row);
        added.push_back(edited(row, edit));
    }
}

TransitionRatio TransactionalChain::transition_ratio_of(const Proposal& proposal) const {
    std::vector<Content> removed, added;
    contents_of(proposal, removed, added);
    return transition_ratio(groups_, removed, added);
}

void TransactionalChain::apply(const Proposal& proposal) {
    if (proposal.is_self_loop()) return;
    contents_of(proposal, removed_, added_);
    for (const auto& edit : proposal.row_edits)
        for (std::uint32_t c : edit.removed) state_.remove_edge(edit.row, c);
    for (const auto& edit : proposal.row_edits)
        for (std::uint32_t c : edit.added) state_.add_edge(edit.row, c);
    apply_update(groups_, removed_, added_);
}

bool TransactionalChain::mh_step(const Proposal& proposal) {
    if (proposal.is_self_loop()) {
        ++stats_.self_loops;
        return true;
    }
    if (algorithm_ == Algorithm::gmmt) {
        apply(proposal);
        ++stats_.accepted;
        return true;
    }
    contents_of(proposal, removed_, added_);
    const TransitionRatio ratio = transition_ratio(groups_, removed_, added_);
    double extra = proposal.log_proposal_ratio;
    if (log_weight_ratio_) extra += log_weight_ratio_(removed_, added_);
    if (!mh_accept(rng_, ratio, extra)) {
        ++stats_.rejected;
        return false;
    }
    apply(proposal);
    ++stats_.accepted;
    return true;
}

bool TransactionalChain::step() {
    ++stats_.steps;
    return mh_step(propose());
}

void TransactionalChain::run(std::uint64_t steps, bool check) {
    for (std::uint64_t i = 0; i < steps; ++i) {
        const Proposal proposal = propose();
        ++stats_.steps;
        const bool moved = mh_step(proposal) && !proposal.is_self_loop();
        if (!check) continue;
        if (moved) check_move(proposal);
        if ((i + 1) % kFullCheckInterval == 0) check_invariants();
    }
}

void TransactionalChain::check_invariants() const {
    state_.check_consistency();
    if (state_.row_sums() != row_sums_ || state_.col_sums() != col_sums_)
        throw InvariantViolation("margin drift after step " + std::to_string(stats_.steps));
    if (preserves_bjdm(algorithm_) && bjdm_of(state_) != observed_bjdm_)
        throw InvariantViolation("BJDM drift after step " + std::to_string(stats_.steps));
    if (!groups_.describes(state_.rows())) throw InvariantViolation("duplicate groups out of sync after step " + std::to_string(stats_.steps));
}

void TransactionalChain::check_move(const Proposal& applied) const {
    const auto fail = [&](const std::string& what) {
        throw InvariantViolation(what + " after step " + std::to_string(stats_.steps));
    };
    std::vector<std::uint32_t> cols;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gone, came;
    for (const auto& edit : applied.row_edits) {
        const auto& row = state_.row(edit.row);
        if (row.size() != row_sums_[edit.row]) fail("margin drift");
        if (std::adjacent_find(row.begin(), row.end(), std::greater_equal<>()) != row.end()) fail("row set not sorted");
        for (std::uint32_t c : row)
            if (!std::binary_search(state_.col(c).begin(), state_.col(c).end(), edit.row))
                fail("row and column sets disagree");
        for (std::uint32_t c : edit.removed) gone.emplace_back(row_sums_[edit.row], col_sums_[c]);
        for (std::uint32_t c : edit.added) came.emplace_back(row_sums_[edit.row], col_sums_[c]);
        cols.insert(cols.end(), edit.removed.begin(), edit.removed.end());
        cols.insert(cols.end(), edit.added.begin(), edit.added.end());
        if (groups_.count(row) == 0) fail("duplicate groups out of sync");
    }
    for (std::uint32_t c : cols) {
        const auto& col = state_.col(c);
        if (col.size() != col_sums_[c]) fail("margin drift");
        if (std::adjacent_find(col.begin(), col.end(), std::greater_equal<>()) != col.end()) fail("column set not sorted");
        for (std::uint32_t r : col)
            if (!state_.has(r, c)) fail("row and column sets disagree");
    }
    // With margins fixed, the BJDM is unchanged iff the removed and added
    // edges have the same multiset of endpoint degrees.
    std::sort(gone.begin(), gone.end());
    std::sort(came.begin(), came.end());
    if (preserves_bjdm(algorithm_) && gone != came) fail("BJDM drift");
    if (groups_.size() != state_.num_rows()) fail("duplicate groups out of sync");
}

// ---------------------------------------------------------------------------
// SequenceChain

SequenceChain::SequenceChain(const SequenceDataset& observed, Algorithm algorithm, std::uint64_t seed,
                             LogWeightRatio log_weight_ratio)
    : algorithm_(algorithm),
      dictionary_(observed.dictionary),
      item_labels_(observed.item_labels),
      graph_(BipartiteMultigraph::from_dataset(observed)),
      groups_(DuplicateGroups::of(observed)),
      rng_(seed),
      log_weight_ratio_(std::move(log_weight_ratio)) {
    if (!is_sequence_algorithm(algorithm))
        throw ValidationError("sampler " + std::string(to_string(algorithm)) + " needs a transactional dataset");
    left_degrees_ = graph_.left_degrees();
    right_degrees_ = graph_.right_degrees();
    left_classes_ = DegreeClasses(left_degrees_);
    right_classes_ = DegreeClasses(right_degrees_);
    edge_cumulative_ = prefix_sums(left_degrees_);
    observed_bjdm_ = bjdm_of(graph_);
}

Proposal SequenceChain::propose() {
    return algorithm_ == Algorithm::alice_s ? propose_alice_s() : propose_gmmt_s();
}

std::uint64_t SequenceChain::distinct_endpoint_pairs(std::uint32_t a, std::uint32_t b) const {
    std::vector<ItemsetId> pa = graph_.ports(a), pb = graph_.ports(b);
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    std::uint64_t same = 0;
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i] < pb[j]) {
            ++i;
        } else if (pb[j] < pa[i]) {
            ++j;
        } else {
            const ItemsetId w = pa[i];
            std::uint64_t ma = 0, mb = 0;
            while (i < pa.size() && pa[i] == w) ++i, ++ma;
            while (j < pb.size() && pb[j] == w) ++j, ++mb;
            same += ma * mb;
        }
    }
    return static_cast<std::uint64_t>(pa.size()) * pb.size() - same;
}

double SequenceChain::left_branch_weight(std::uint32_t degree, std::uint64_t pairs) const {
    const auto* cls = left_classes_.find(degree);
    const double k = static_cast<double>(cls->members.size());
    const double total = static_cast<double>(left_classes_.with_replacement_total());
    // coin * C(k+1,2)/total * two ordered draws of 1/k^2 each picking one of |H| pairs
    return 0.5 * (k * (k + 1) / 2.0) / total * 2.0 / (k * k * static_cast<double>(pairs));
}

double SequenceChain::right_branch_weight(std::uint32_t degree) const {
    const double total = static_cast<double>(right_classes_.distinct_pair_total());
    const double n = degree;
    // coin * C(k,2)/total * 2/(k(k-1)) * 1/n^2
    return 0.5 / total / (n * n);
}

double SequenceChain::alice_s_proposal_weight(PortRef first, PortRef second) const {
    const std::uint32_t a = first.left, b = second.left;
    const ItemsetId c = graph_.endpoint(first), d = graph_.endpoint(second);
    if (c == d) return 0.0;
    double weight = 0.0;
    if (left_degrees_[a] == left_degrees_[b]) weight += left_branch_weight(left_degrees_[a], distinct_endpoint_pairs(a, b));
    if (right_degrees_[c] == right_degrees_[d]) weight += right_branch_weight(right_degrees_[c]);
    return weight;
}

double SequenceChain::proposal_log_ratio(PortRef first, PortRef second) const {
    const std::uint32_t a = first.left, b = second.left;
    const ItemsetId c = graph_.endpoint(first), d = graph_.endpoint(second);
    if (a == b || left_degrees_[a] != left_degrees_[b]) return 0.0;
    // Only the left branch can be asymmetric: the right branch weight depends on
    // degrees alone, and for a == b the endpoint multiset of a is unchanged.
    const std::uint64_t pairs = distinct_endpoint_pairs(a, b);
    const auto& pa = graph_.ports(a);
    const auto& pb = graph_.ports(b);
    const auto ma_c = static_cast<std::int64_t>(std::count(pa.begin(), pa.end(), c));
    const auto ma_d = static_cast<std::int64_t>(std::count(pa.begin(), pa.end(), d));
    const auto mb_c = static_cast<std::int64_t>(std::count(pb.begin(), pb.end(), c));
    const auto mb_d = static_cast<std::int64_t>(std::count(pb.begin(), pb.end(), d));
    // a trades one c for a d, b one d for a c.
    const std::int64_t delta_same = ma_c - mb_c + mb_d - ma_d - 2;
    const auto pairs_after = static_cast<std::uint64_t>(static_cast<std::int64_t>(pairs) - delta_same);

    double forward = left_branch_weight(left_degrees_[a], pairs);
    double backward = left_branch_weight(left_degrees_[a], pairs_after);
    if (right_degrees_[c] == right_degrees_[d]) {
        const double r = right_branch_weight(right_degrees_[c]);
        forward += r;
        backward += r;
    }
    return std::log(backward) - std::log(forward);
}

Proposal SequenceChain::propose_alice_s() {
    Proposal p;
    if (rng_.coin()) {
        if (left_classes_.with_replacement_total() == 0) return p;
        const auto& cls = left_classes_.draw_for_pair_with_replacement(rng_);
        const std::uint32_t a = cls.members[rng_.uniform_index(cls.members.size())];
        const std::uint32_t b = cls.members[rng_.uniform_index(cls.members.size())];
        const std::uint64_t pairs = distinct_endpoint_pairs(a, b);
        if (pairs == 0) return p;
        const auto& pa = graph_.ports(a);
        const auto& pb = graph_.ports(b);
        // Uniform over H_{a,b}: rejection first, exact indexing if that stalls.
        bool found = false;
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
            const auto x = static_cast<std::uint32_t>(rng_.uniform_index(pa.size()));
            const auto y = static_cast<std::uint32_t>(rng_.uniform_index(pb.size()));
            if (pa[x] != pb[y]) {
                p.first = {a, x};
                p.second = {b, y};
                found = true;
            }
        }
        if (!found) {
            std::uint64_t target = rng_.uniform_index(pairs);
            for (std::uint32_t x = 0; x < pa.size() && !found; ++x)
                for (std::uint32_t y = 0; y < pb.size(); ++y) {
                    if (pa[x] == pb[y]) continue;
                    if (target-- == 0) {
                        p.first = {a, x};
                        p.second = {b, y};
                        found = true;
                        break;
                    }
                }
        }
    } else {
        if (right_classes_.distinct_pair_total() == 0) return p;
        const auto& cls = right_classes_.draw_for_distinct_pair(rng_);
        const auto [i, j] = rng_.distinct_pair(cls.members.size());
        const auto& ic = graph_.incidences(cls.members[i]);
        const auto& id = graph_.incidences(cls.members[j]);
        p.first = ic[rng_.uniform_index(ic.size())];
        p.second = id[rng_.uniform_index(id.size())];
    }
    p.kind = MoveKind::mrso;
    p.log_proposal_ratio = proposal_log_ratio(p.first, p.second);
    return p;
}

Proposal SequenceChain::propose_gmmt_s() {
    Proposal p;
    const std::uint64_t edges = graph_.num_edges();
    if (edges == 0) return p;
    const auto [a, x] = locate_edge(edge_cumulative_, rng_.uniform_index(edges));
    const auto [b, y] = locate_edge(edge_cumulative_, rng_.uniform_index(edges));
    if (graph_.ports(a)[x] == graph_.ports(b)[y]) return p;
    p.kind = MoveKind::gmmt_swap;
    p.first = {a, x};
    p.second = {b, y};
    return p;
}

void SequenceChain::contents_of(const Proposal& proposal, std::vector<Content>& removed,
                                std::vector<Content>& added) const {
    removed.clear();
    added.clear();
    const PortRef e1 = proposal.first, e2 = proposal.second;
    const ItemsetId c = graph_.endpoint(e1), d = graph_.endpoint(e2);
    removed.push_back(graph_.ports(e1.left));
    if (e2.left != e1.left) removed.push_back(graph_.ports(e2.left));
    added = removed;
    added[0][e1.port] = d;
    added[e2.left == e1.left ? 0 : 1][e2.port] = c;
}

TransitionRatio SequenceChain::transition_ratio_of(const Proposal& proposal) const {
    std::vector<Content> removed, added;
    contents_of(proposal, removed, added);
    return transition_ratio(groups_, removed, added);
}

void SequenceChain::apply(const Proposal& proposal) {
    if (proposal.is_self_loop()) return;
    contents_of(proposal, removed_, added_);
    graph_.swap_endpoints(proposal.first, proposal.second);
    apply_update(groups_, removed_, added_);
}

bool SequenceChain::mh_step(const Proposal& proposal) {
    if (proposal.is_self_loop()) {
        ++stats_.self_loops;
        return true;
    }
    if (algorithm_ == Algorithm::gmmt_s) {
        apply(proposal);
        ++stats_.accepted;
        return true;
    }
    contents_of(proposal, removed_, added_);
    const TransitionRatio ratio = transition_ratio(groups_, removed_, added_);
    double extra = proposal.log_proposal_ratio;
    if (log_weight_ratio_) extra += log_weight_ratio_(removed_, added_);
    if (!mh_accept(rng_, ratio, extra)) {
        ++stats_.rejected;
        return false;
    }
    apply(proposal);
    ++stats_.accepted;
    return true;
}

bool SequenceChain::step() {
    ++stats_.steps;
    return mh_step(propose());
}

void SequenceChain::run(std::uint64_t steps, bool check) {
    for (std::uint64_t i = 0; i < steps; ++i) {
        const Proposal proposal = propose();
        ++stats_.steps;
        const bool moved = mh_step(proposal) && !proposal.is_self_loop();
        if (!check) continue;
        if (moved) check_move(proposal);
        if ((i + 1) % kFullCheckInterval == 0) check_invariants();
    }
}

void SequenceChain::check_invariants() const {
    graph_.check_consistency();
    if (graph_.left_degrees() != left_degrees_ || graph_.right_degrees() != right_degrees_)
        throw InvariantViolation("degree drift after step " + std::to_string(stats_.steps));
    if (preserves_bjdm(algorithm_) && bjdm_of(graph_) != observed_bjdm_)
        throw InvariantViolation("BJDM drift after step " + std::to_string(stats_.steps));
    if (!groups_.describes(graph_.all_ports())) throw InvariantViolation("duplicate groups out of sync after step " + std::to_string(stats_.steps));
}

void SequenceChain::check_move(const Proposal& applied) const {
    const auto fail = [&](const std::string& what) {
        throw InvariantViolation(what + " after step " + std::to_string(stats_.steps));
    };
    const std::array lefts = {applied.first.left, applied.second.left};
    for (std::uint32_t v : lefts) {
        const auto& ports = graph_.ports(v);
        if (ports.size() != left_degrees_[v]) fail("degree drift");
        for (std::uint32_t k = 0; k < ports.size(); ++k) {
            const auto& inc = graph_.incidences(ports[k]);
            if (std::find(inc.begin(), inc.end(), PortRef{v, k}) == inc.end()) fail("port and incidence lists disagree");
        }
        if (groups_.count(ports) == 0) fail("duplicate groups out of sync");
    }
    // The swap replaced (a,c),(b,d) with (a,d),(b,c).
    const std::uint32_t c = graph_.endpoint(applied.second), d = graph_.endpoint(applied.first);
    for (std::uint32_t w : {c, d}) {
        if (graph_.right_degree(w) != right_degrees_[w]) fail("degree drift");
        for (const PortRef& e : graph_.incidences(w))
            if (graph_.endpoint(e) != w) fail("port and incidence lists disagree");
    }
    const std::uint32_t da = left_degrees_[lefts[0]], db = left_degrees_[lefts[1]];
    std::array gone = {std::pair(da, right_degrees_[c]), std::pair(db, right_degrees_[d])};
    std::array came = {std::pair(da, right_degrees_[d]), std::pair(db, right_degrees_[c])};
    std::sort(gone.begin(), gone.end());
    std::sort(came.begin(), came.end());
    if (preserves_bjdm(algorithm_) && gone != came) fail("BJDM drift");
    if (groups_.size() != graph_.num_left()) fail("duplicate groups out of sync");
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

template <typename Chain, typename Dataset>
ChainResult<Dataset> run_one(const Dataset& observed, const SamplerConfig& config, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    Chain chain(observed, config.algorithm, seed, config.log_weight_ratio);
    chain.run(config.num_swaps, config.check_invariants);
    // Release runs still verify once, when the sample is emitted.
    chain.check_invariants();
    ChainResult<Dataset> result{chain.dataset(), chain.stats(), 0.0, seed};
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

template <typename Chain, typename Dataset>
std::vector<ChainResult<Dataset>> run_many(const Dataset& observed, const SamplerConfig& config,
                                           std::size_t num_samples, std::size_t parallelism) {
    if (num_samples == 0) throw ValidationError("number of samples must be at least 1");
    std::vector<std::optional<ChainResult<Dataset>>> slots(num_samples);
    parallel_for(num_samples, parallelism, [&](std::size_t i) {
        slots[i] = run_one<Chain>(observed, config, derive_chain_seed(config.seed, i));
    });
    std::vector<ChainResult<Dataset>> out;
    out.reserve(num_samples);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace

ChainResult<TransactionalDataset> run_chain(const TransactionalDataset& observed, const SamplerConfig& config) {
    return run_one<TransactionalChain>(observed, config, config.seed);
}

ChainResult<SequenceDataset> run_chain(const SequenceDataset& observed, const SamplerConfig& config) {
    return run_one<SequenceChain>(observed, config, config.seed);
}

std::vector<ChainResult<TransactionalDataset>> sample_many(const TransactionalDataset& observed,
                                                           const SamplerConfig& config, std::size_t num_samples,
                                                           std::size_t parallelism) {
    return run_many<TransactionalChain>(observed, config, num_samples, parallelism);
}

std::vector<ChainResult<SequenceDataset>> sample_many(const SequenceDataset& observed, const SamplerConfig& config,
                                                      std::size_t num_samples, std::size_t parallelism) {
    return run_many<SequenceChain>(observed, config, num_samples, parallelism);
}

std::uint64_t step_unit(const TransactionalDataset& dataset) { return dataset.total_length(); }
std::uint64_t step_unit(const SequenceDataset& dataset) { return dataset.total_length(); }

std::uint64_t steps_for_multiplier(double k, std::uint64_t w) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw ValidationError("step multiplier must be a finite non-negative number");
    // The epsilon keeps grid points like 0.15 * 20 from rounding down.
    return static_cast<std::uint64_t>(std::floor(k * static_cast<double>(w) + 1e-9));
}

}  // namespace bjdm
