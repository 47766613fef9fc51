#include <doctest.h>

#include <cmath>

#include "bjdm/errors.hpp"
#include "bjdm/stats.hpp"
#include "bjdm/synthetic.hpp"
#include "support.hpp"

using namespace bjdm;

TEST_CASE("ARSD by formula") {
    const std::vector<std::uint32_t> obs = {10}, half = {5};
    CHECK(arsd(obs, half) == doctest::Approx(0.5));
    const std::vector<std::uint32_t> obs2 = {10, 4}, sample2 = {5, 4};
    CHECK(arsd(obs2, sample2) == doctest::Approx(0.25));
    const std::vector<std::uint32_t> over = {15};
    CHECK(arsd(obs, over) == doctest::Approx(0.5));
    CHECK(arsd(obs2, obs2) == 0.0);

    const std::vector<std::uint32_t> empty, zero = {0};
    CHECK_THROWS_AS(arsd(empty, empty), ValidationError);
    CHECK_THROWS_AS(arsd(obs, obs2), ValidationError);
    CHECK_THROWS_AS(arsd(zero, obs), ValidationError);
}

TEST_CASE("ARSD of a dataset against itself is zero") {
    const auto d = generate_synthetic(200, 20, 6, 4);
    const auto f = mine_frequent_itemsets(d, Threshold::fraction(0.1));
    REQUIRE_FALSE(f.empty());
    CHECK(arsd(f, d) == 0.0);
    const auto s = fixtures::two_sequences();
    const auto sf = mine_frequent_sequences(s, Threshold::fraction(0.5));
    CHECK(arsd(sf, s) == 0.0);
    CHECK(supports_in(sf, s) == [&] {
        std::vector<std::uint32_t> v;
        for (const auto& p : sf) v.push_back(p.support);
        return v;
    }());
}

TEST_CASE("empirical p-values") {
    std::vector<double> zeros(4352, 0.0);
    auto r = empirical_pvalue(1.0, zeros);
    CHECK(r.count_extreme == 0);
    CHECK(r.p_hat == doctest::Approx(1.0 / 4353));
    CHECK(r.p_hat == doctest::Approx(2.3e-4).epsilon(0.01));

    zeros.resize(2176);
    r = empirical_pvalue(1.0, zeros);
    CHECK(r.p_hat == doctest::Approx(1.0 / 2177));
    CHECK(r.p_hat == doctest::Approx(4.6e-4).epsilon(0.01));

    const std::vector<double> nine(9, 5.0);
    CHECK(empirical_pvalue(5.0, nine).p_hat == 1.0);
    CHECK(empirical_pvalue(5.0, nine, Direction::less).p_hat == 1.0);
    CHECK(empirical_pvalue(6.0, nine, Direction::less).count_extreme == 9);
    CHECK(empirical_pvalue(6.0, nine).count_extreme == 0);

    CHECK_THROWS_AS(empirical_pvalue(1.0, std::vector<double>{}), ValidationError);
    CHECK(parse_direction("less") == Direction::less);
    CHECK_THROWS_AS(parse_direction("sideways"), ValidationError);
}

TEST_CASE("p-values stay above the floor and fall with the observed value") {
    Rng rng(3);
    std::vector<double> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(rng.uniform01());
    double last = 1.0;
    for (double x = -0.1; x <= 1.1; x += 0.05) {
        const double p = empirical_pvalue(x, samples).p_hat;
        CHECK(p <= last);
        CHECK(p >= 1.0 / 51);
        CHECK(p <= 1.0);
        last = p;
    }
}

TEST_CASE("Westfall-Young critical value") {
    std::vector<double> tenths;
    for (int i = 1; i <= 10; ++i) tenths.push_back(i / 10.0);
    CHECK(wy_adjusted_critical_value(tenths, 0.2) == doctest::Approx(0.2));

    const std::vector<double> ones(20, 1.0);
    const double alpha = wy_adjusted_critical_value(ones, 0.05);
    CHECK(alpha < 1.0);

    const std::vector<double> one = {0.3};
    CHECK(wy_adjusted_critical_value(one, 0.5) < 0.3);

    // ties: {0.1, 0.1, 0.2, 0.3} with floor(0.25 * 4) = 1 admits nothing at 0.1
    const std::vector<double> ties = {0.1, 0.3, 0.1, 0.2};
    CHECK(wy_adjusted_critical_value(ties, 0.25) < 0.1);
    CHECK(wy_adjusted_critical_value(ties, 0.5) == doctest::Approx(0.1));

    CHECK_THROWS_AS(wy_adjusted_critical_value(tenths, 0.0), ValidationError);
    CHECK_THROWS_AS(wy_adjusted_critical_value(tenths, 1.0), ValidationError);
}

TEST_CASE("critical value is monotone in delta and respects the FWER budget") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> p;
        const std::size_t n = 1 + rng.uniform_index(40);
        for (std::size_t i = 0; i < n; ++i) p.push_back((1 + rng.uniform_index(20)) / 20.0);
        double last = 0.0;
        for (double delta = 0.01; delta < 1.0; delta += 0.07) {
            const double a = wy_adjusted_critical_value(p, delta);
            CHECK(a >= last);
            const auto hits = std::count_if(p.begin(), p.end(), [&](double x) { return x <= a; });
            CHECK(static_cast<double>(hits) <= std::floor(delta * static_cast<double>(n)) + 1e-9);
            last = a;
        }
    }
}

TEST_CASE("Westfall-Young minimum p-values") {
    // two hypotheses; outer dataset 0 is extreme on hypothesis 1
    const std::vector<std::vector<std::uint32_t>> outer = {{1, 9}, {2, 2}};
    const std::vector<std::vector<std::uint32_t>> inner = {{1, 1}, {2, 2}, {1, 1}};
    const auto mins = wy_min_pvalues(outer, inner);
    REQUIRE(mins.size() == 2);
    CHECK(mins[0] == doctest::Approx(1.0 / 4));
    CHECK(mins[1] == doctest::Approx(2.0 / 4));
}

TEST_CASE("per-sample statistics and CSV") {
    const auto rows = pattern_statistics(3, {{1, 4}, {2, 1}});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].statistic == "fi-count");
    CHECK(rows[0].value == 5.0);
    CHECK(rows[2].statistic == "fi-length-2");
    const auto csv = statistics_csv(rows);
    CHECK(csv.rfind("sample_index,statistic,value\n", 0) == 0);
    CHECK(csv.find("3,fi-length-1,4\n") != std::string::npos);
}

TEST_CASE("convergence traces") {
    const auto grid = default_k_grid();
    REQUIRE(grid.size() == 19);
    CHECK(grid.front() == 0.0);
    CHECK(grid[1] == doctest::Approx(0.15));
    CHECK(grid[13] == doctest::Approx(1.95));
    CHECK(grid[14] == 2.0);
    CHECK(grid.back() == 6.0);

    const auto d = generate_synthetic(300, 30, 6, 12);
    const std::vector<double> k = {0, 0.5, 1, 2};
    const auto trace = convergence_trace(d, Algorithm::alice_b, 7, k, Threshold::fraction(0.05));
    REQUIRE(trace.size() == 4);
    CHECK(trace[0].arsd == 0.0);
    CHECK(trace[0].steps == 0);
    CHECK(trace[3].steps == steps_for_multiplier(2, step_unit(d)));
    CHECK(trace[3].arsd > 0.0);
    const auto again = convergence_trace(d, Algorithm::alice_b, 7, k, Threshold::fraction(0.05));
    for (std::size_t i = 0; i < 4; ++i) CHECK(again[i].arsd == trace[i].arsd);

    const std::vector<double> bad = {1, 0.5};
    CHECK_THROWS_AS(convergence_trace(d, Algorithm::alice_a, 7, bad, Threshold::fraction(0.05)), ValidationError);

    const auto js = to_json(trace);
    CHECK(js.size() == 4);
    CHECK(js[3]["k"] == 2.0);
}
