#include <doctest.h>

#include <cmath>

#include "bjdm/errors.hpp"
#include "bjdm/multiplicity.hpp"
#include "support.hpp"

using namespace bjdm;

namespace {

DuplicateGroups groups_of(std::initializer_list<Content> rows) {
    return DuplicateGroups(std::vector<Content>(rows));
}

// A=0, B=1, C=2, D=3
constexpr std::uint32_t A = 0, B = 1, C = 2, D = 3;

}  // namespace

TEST_CASE("Q of simple bags") {
    SUBCASE("all identical") {
        const auto g = groups_of({{A, B}, {A, B}, {A, B}});
        CHECK(log_num_matrices(g) == doctest::Approx(0.0));
        CHECK(num_matrices_exact(g) == 1);
    }
    SUBCASE("all distinct, one length") {
        const auto g = groups_of({{A}, {B}, {C}, {D}, {A, B}});
        // lengths 1 (four distinct) and 2 (one)
        CHECK(num_matrices_exact(g) == 24);
        CHECK(log_num_matrices(g) == doctest::Approx(std::log(24.0)));
    }
    SUBCASE("{A,B},{A,B},{A,C},{D}") {
        const auto g = groups_of({{A, B}, {A, B}, {A, C}, {D}});
        CHECK(num_matrices_exact(g) == 3);
        CHECK(std::exp(log_num_matrices(g)) == doctest::Approx(3.0));
        TransactionalDataset d;
        d.item_labels = {"A", "B", "C", "D"};
        d.transactions = {{A, B}, {A, B}, {A, C}, {D}};
        CHECK(oracle::distinct_row_orders(d) == 3);
    }
}

TEST_CASE("Q matches row-permutation enumeration on random bags") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.uniform_index(7);
        const std::size_t items = 1 + rng.uniform_index(3);
        const auto d = oracle::random_dataset(rng, rows, items, 0.5);
        const auto g = DuplicateGroups::of(d);
        const auto brute = oracle::distinct_row_orders(d);
        CHECK(num_matrices_exact(g) == brute);
        CHECK(std::llround(std::exp(log_num_matrices(g))) == static_cast<long long>(brute));
    }
}

TEST_CASE("transition ratio") {
    SUBCASE("identity move") {
        const auto g = groups_of({{A, B}, {C, D}});
        const std::vector<Content> same = {{A, B}};
        const auto r = transition_ratio(g, same, same);
        CHECK(r.exact());
        CHECK(r.value() == 1.0);
    }
    SUBCASE("distinct before and after") {
        const auto g = groups_of({{A, B}, {C, D}});
        const std::vector<Content> removed = {{A, B}, {C, D}}, added = {{A, D}, {B, C}};
        CHECK(transition_ratio(g, removed, added).value() == 1.0);
    }
    SUBCASE("breaking a duplicate pair halves Q") {
        const auto g = groups_of({{A, B}, {A, B}, {C, D}});
        const std::vector<Content> removed = {{A, B}, {C, D}}, added = {{A, D}, {B, C}};
        const auto r = transition_ratio(g, removed, added);
        CHECK(r.exact());
        CHECK(r.numerator() * 2 == r.denominator());
        CHECK(r.value() == 0.5);
        auto after = g;
        apply_update(after, removed, added);
        CHECK(std::exp(log_num_matrices(g) - log_num_matrices(after)) == doctest::Approx(0.5));
        // the reverse move restores the pair
        CHECK(transition_ratio(after, added, removed).value() == doctest::Approx(2.0));
    }
    SUBCASE("groups are left untouched") {
        const auto g = groups_of({{A, B}, {A, B}, {C, D}});
        const auto copy = g;
        const std::vector<Content> removed = {{A, B}, {C, D}}, added = {{A, D}, {B, C}};
        (void)transition_ratio(g, removed, added);
        CHECK(g == copy);
    }
}

TEST_CASE("transition ratio contract violations") {
    const auto g = groups_of({{A, B}, {C, D}});
    const std::vector<Content> absent = {{A, C}}, one = {{B, D}};
    CHECK_THROWS_AS(transition_ratio(g, absent, one), ValidationError);
    const std::vector<Content> twice = {{A, B}, {A, B}}, pair = {{A, C}, {B, D}};
    CHECK_THROWS_AS(transition_ratio(g, twice, pair), ValidationError);
    const std::vector<Content> removed = {{A, B}}, longer = {{A, B, C}};
    CHECK_THROWS_AS(transition_ratio(g, removed, longer), ValidationError);
    CHECK_THROWS_AS(num_matrices_exact(DuplicateGroups(std::vector<Content>(21, Content{A}))), ValidationError);
}

TEST_CASE("apply_update bookkeeping") {
    auto g = groups_of({{A, B}, {A, B}, {C, D}});
    const auto start = g;
    const std::vector<Content> removed = {{C, D}}, added = {{A, C}};
    apply_update(g, removed, added);
    CHECK(g.count({C, D}) == 0);
    CHECK(g.num_groups() == 2);
    CHECK(g.length_totals().at(2) == 3);
    apply_update(g, added, removed);
    CHECK(g == start);
}

TEST_CASE("ratios of a move and its reverse multiply to one") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Content> rows;
        for (int i = 0; i < 6; ++i) rows.push_back({static_cast<std::uint32_t>(rng.uniform_index(3)), 5});
        DuplicateGroups g(rows);
        const Content x = rows[rng.uniform_index(rows.size())];
        const Content y = rows[rng.uniform_index(rows.size())];
        const std::vector<Content> removed = x == y ? std::vector<Content>{x} : std::vector<Content>{x, y};
        std::vector<Content> added;
        for (std::size_t i = 0; i < removed.size(); ++i) added.push_back({static_cast<std::uint32_t>(rng.uniform_index(4)), 5});
        const auto forward = transition_ratio(g, removed, added);
        const double q_before = log_num_matrices(g);
        auto after = g;
        apply_update(after, removed, added);
        const auto backward = transition_ratio(after, added, removed);
        CHECK(forward.value() * backward.value() == doctest::Approx(1.0));
        CHECK(forward.log_value() == doctest::Approx(q_before - log_num_matrices(after)));
    }
}

TEST_CASE("large ratios switch to log space") {
    DuplicateGroups g;
    for (int i = 0; i < 3'000'000; ++i) g.add({A});
    g.add({B});
    // 2 of the 3M copies become B: Q(D)/Q(D') = (1/3M)(1/(3M-1)) * 2 * 3
    const std::vector<Content> removed = {{A}, {A}, {A}};
    const std::vector<Content> added = {{B}, {B}, {C}};
    const auto r = transition_ratio(g, removed, added);
    const double expected = std::log(2.0) + std::log(3.0) + std::log(1.0) - std::log(3e6) - std::log(3e6 - 1) -
                            std::log(3e6 - 2);
    CHECK_FALSE(r.exact());
    CHECK(r.log_value() == doctest::Approx(expected));
}
