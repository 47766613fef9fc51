// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// The oracles work on plain dense containers and never call the samplers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bjdm/dataset.hpp"
#include "bjdm/dataset_io.hpp"
#include "bjdm/random.hpp"

namespace fixtures {

// Three shopping baskets: two share bread and milk, one item each with the
// third, plus private items.
inline const char* kBaskets =
    "bread milk carrot x1 x2 x3\n"
    "bread milk broccoli y1 y2\n"
    "carrot broccoli z1 z2\n";

// Two sequences over itemsets A={1}, B={2}, C={3}, D={4}: alpha = <A,B,B>,
// beta = <B,C,D>.
inline const char* kTwoSequences = "1 -1 2 -1 2 -1 -2\n2 -1 3 -1 4 -1 -2\n";

inline bjdm::TransactionalDataset baskets() { return bjdm::parse_transactional(std::string_view(kBaskets)); }
inline bjdm::SequenceDataset two_sequences() { return bjdm::parse_sequential(std::string_view(kTwoSequences)); }

}  // namespace fixtures

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix dense(const bjdm::TransactionalDataset& d) {
    Matrix m(d.size(), std::vector<int>(d.num_items(), 0));
    for (std::size_t r = 0; r < d.size(); ++r)
        for (auto c : d.transactions[r]) m[r][c] = 1;
    return m;
}

inline bjdm::TransactionalDataset from_dense(const Matrix& m, std::size_t items) {
    bjdm::TransactionalDataset d;
    for (std::size_t i = 0; i < items; ++i) d.item_labels.push_back(std::to_string(i));
    for (const auto& row : m) {
        bjdm::Itemset t;
        for (std::uint32_t c = 0; c < row.size(); ++c)
            if (row[c]) t.push_back(c);
        d.transactions.push_back(t);
    }
    return d;
}

// Random dataset with no empty transaction.
inline bjdm::TransactionalDataset random_dataset(bjdm::Rng& rng, std::size_t rows, std::size_t items, double p) {
    Matrix m(rows, std::vector<int>(items, 0));
    for (auto& row : m) {
        for (auto& x : row) x = rng.uniform01() < p ? 1 : 0;
        if (std::count(row.begin(), row.end(), 1) == 0) row[rng.uniform_index(items)] = 1;
    }
    return from_dense(m, items);
}

inline std::vector<int> row_sums(const Matrix& m) {
    std::vector<int> s;
    for (const auto& r : m) s.push_back(static_cast<int>(std::count(r.begin(), r.end(), 1)));
    return s;
}

inline std::vector<int> col_sums(const Matrix& m) {
    std::vector<int> s(m.empty() ? 0 : m[0].size(), 0);
    for (const auto& r : m)
        for (std::size_t c = 0; c < r.size(); ++c) s[c] += r[c];
    return s;
}

// J[(i,j)] by enumerating the 1-entries.
inline std::map<std::pair<int, int>, std::uint64_t> bjdm(const Matrix& m) {
    const auto rs = row_sums(m), cs = col_sums(m);
    std::map<std::pair<int, int>, std::uint64_t> j;
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            if (m[r][c]) ++j[{rs[r], cs[c]}];
    return j;
}

// Simple paths row-col-row-col of length three.
inline std::uint64_t caterpillars(const Matrix& m) {
    std::uint64_t n = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < rows; ++b)
            for (std::size_t c = 0; c < cols; ++c)
                for (std::size_t d = 0; d < cols; ++d)
                    if (a != b && c != d && m[a][c] && m[b][c] && m[b][d]) ++n;
    return n;
}

// Number of distinct matrices over the row permutations that keep every row
// sum in place.
inline std::uint64_t distinct_row_orders(const bjdm::TransactionalDataset& d) {
    std::vector<std::size_t> perm(d.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::set<std::vector<bjdm::Itemset>> seen;
    do {
        std::vector<bjdm::Itemset> m;
        bool same_sums = true;
        for (std::size_t r = 0; r < perm.size(); ++r) {
            m.push_back(d.transactions[perm[r]]);
            same_sums = same_sums && m.back().size() == d.transactions[r].size();
        }
        if (same_sums) seen.insert(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return seen.size();
}

// Dataset as a sorted bag of sorted rows.
using Bag = std::vector<bjdm::Itemset>;

inline Bag bag_of(const bjdm::TransactionalDataset& d) {
    Bag b = d.transactions;
    std::sort(b.begin(), b.end());
    return b;
}

// All bags reachable by RSOs: (a,c),(b,d) -> (a,d),(b,c) with rows or
// columns of equal sum.
inline std::vector<Bag> rso_null_set(const bjdm::TransactionalDataset& start) {
    const std::size_t items = start.num_items();
    std::set<Bag> seen{bag_of(start)};
    std::deque<Bag> queue{bag_of(start)};
    while (!queue.empty()) {
        const Bag cur = queue.front();
        queue.pop_front();
        bjdm::TransactionalDataset d;
        d.transactions = cur;
        d.item_labels.resize(items);
        const Matrix m = dense(d);
        const auto rs = row_sums(m), cs = col_sums(m);
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b)
                for (std::size_t c = 0; c < items; ++c)
                    for (std::size_t e = 0; e < items; ++e) {
                        if (a == b || c == e) continue;
                        if (!(m[a][c] && m[b][e] && !m[a][e] && !m[b][c])) continue;
                        if (rs[a] != rs[b] && cs[c] != cs[e]) continue;
                        Matrix n = m;
                        n[a][c] = 0, n[a][e] = 1, n[b][e] = 0, n[b][c] = 1;
                        Bag next = bag_of(from_dense(n, items));
                        if (seen.insert(next).second) queue.push_back(next);
                    }
    }
    return {seen.begin(), seen.end()};
}

// Sequence dataset as a sorted bag of sequences of itemset contents.
using SeqBag = std::vector<std::vector<bjdm::Itemset>>;

inline SeqBag bag_of(const bjdm::SequenceDataset& d) {
    SeqBag b;
    for (const auto& s : d.sequences) {
        std::vector<bjdm::Itemset> seq;
        for (auto id : s) seq.push_back(d.dictionary.content(id));
        b.push_back(seq);
    }
    std::sort(b.begin(), b.end());
    return b;
}

// All bags reachable by mRSOs: ports (a,x) holding c and (b,y) holding d != c
// exchange contents when deg a = deg b or c and d occur equally often.
inline std::vector<SeqBag> mrso_null_set(const bjdm::SequenceDataset& start) {
    auto degree_of = [](const SeqBag& bag) {
        std::map<bjdm::Itemset, int> deg;
        for (const auto& s : bag)
            for (const auto& w : s) ++deg[w];
        return deg;
    };
    std::set<SeqBag> seen{bag_of(start)};
    std::deque<SeqBag> queue{bag_of(start)};
    while (!queue.empty()) {
        const SeqBag cur = queue.front();
        queue.pop_front();
        const auto deg = degree_of(cur);
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = 0; b < cur.size(); ++b)
                for (std::size_t x = 0; x < cur[a].size(); ++x)
                    for (std::size_t y = 0; y < cur[b].size(); ++y) {
                        const auto& c = cur[a][x];
                        const auto& e = cur[b][y];
                        if (c == e) continue;
                        if (cur[a].size() != cur[b].size() && deg.at(c) != deg.at(e)) continue;
                        SeqBag n = cur;
                        std::swap(n[a][x], n[b][y]);
                        std::sort(n.begin(), n.end());
                        if (seen.insert(n).second) queue.push_back(n);
                    }
    }
    return {seen.begin(), seen.end()};
}

// Total variation distance between an empirical histogram and uniform over n states.
template <typename Key>
double tv_from_uniform(const std::map<Key, std::uint64_t>& counts, std::size_t n, std::uint64_t total) {
    double tv = 0.0;
    std::size_t hit = 0;
    for (const auto& [k, c] : counts) {
        tv += std::abs(static_cast<double>(c) / static_cast<double>(total) - 1.0 / static_cast<double>(n));
        ++hit;
    }
    tv += static_cast<double>(n - hit) / static_cast<double>(n);
    return tv / 2.0;
}

template <typename Key>
double tv_between(const std::map<Key, std::uint64_t>& p, std::uint64_t np, const std::map<Key, std::uint64_t>& q,
                  std::uint64_t nq) {
    std::set<Key> keys;
    for (const auto& [k, c] : p) keys.insert(k);
    for (const auto& [k, c] : q) keys.insert(k);
    double tv = 0.0;
    for (const auto& k : keys) {
        const double a = p.count(k) ? static_cast<double>(p.at(k)) / static_cast<double>(np) : 0.0;
        const double b = q.count(k) ? static_cast<double>(q.at(k)) / static_cast<double>(nq) : 0.0;
        tv += std::abs(a - b);
    }
    return tv / 2.0;
}

}  // namespace oracle
