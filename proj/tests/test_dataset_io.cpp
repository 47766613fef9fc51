#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bjdm/dataset_io.hpp"
#include "bjdm/errors.hpp"
#include "bjdm/mining.hpp"
#include "bjdm/synthetic.hpp"
#include "support.hpp"

using namespace bjdm;

TEST_CASE("transactional parsing renumbers tokens by first appearance") {
    const auto d = parse_transactional(std::string_view("1 2 3\n2 3\n"));
    REQUIRE(d.size() == 2);
    CHECK(d.transactions[0] == Itemset{0, 1, 2});
    CHECK(d.transactions[1] == Itemset{1, 2});
    CHECK(d.item_labels == std::vector<std::string>{"1", "2", "3"});
    CHECK(d.total_length() == 5);
}

TEST_CASE("duplicate tokens on a line collapse") {
    const auto d = parse_transactional(std::string_view("a a b\n"));
    REQUIRE(d.size() == 1);
    CHECK(d.transactions[0].size() == 2);
}

TEST_CASE("transactional parse errors carry the line number") {
    CHECK_THROWS_AS(parse_transactional(std::string_view("")), ParseError);
    try {
        parse_transactional(std::string_view("1 2\n   \n3\n"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.location() == 2);
    }
}

TEST_CASE("string labels and line order survive parsing") {
    const auto d = fixtures::baskets();
    REQUIRE(d.size() == 3);
    CHECK(d.num_items() == 11);
    CHECK(d.item_labels[d.transactions[2][0]] == "carrot");
    CHECK(length_histogram(d) == std::map<std::size_t, std::size_t>{{4, 1}, {5, 1}, {6, 1}});
}

TEST_CASE("sequence parsing builds the itemset dictionary") {
    const auto d = parse_sequential(std::string_view("1 2 -1 3 -1 -2"));
    REQUIRE(d.size() == 1);
    CHECK(d.dictionary.size() == 2);
    REQUIRE(d.sequences[0].size() == 2);
    const auto& first = d.dictionary.content(d.sequences[0][0]);
    CHECK(first.size() == 2);
    CHECK(d.dictionary.content(d.sequences[0][1]).size() == 1);
}

TEST_CASE("repeated itemsets: multi-support counts positions, support counts sequences") {
    const auto d = parse_sequential(std::string_view("1 -1 1 -1 -2"));
    REQUIRE(d.sequences[0].size() == 2);
    CHECK(d.sequences[0][0] == d.sequences[0][1]);
    CHECK(d.dictionary.size() == 1);
    CHECK(itemset_multi_supports(d) == std::vector<std::uint32_t>{2});
    CHECK(support(d, std::vector<Itemset>{{0}}) == 1);
}

TEST_CASE("sequence parse errors") {
    CHECK_THROWS_AS(parse_sequential(std::string_view("-2")), ParseError);
    CHECK_THROWS_AS(parse_sequential(std::string_view("1 -1 -1 -2")), ParseError);
    CHECK_THROWS_AS(parse_sequential(std::string_view("1 -1 2 -1")), ParseError);
    CHECK_THROWS_AS(parse_sequential(std::string_view("")), ParseError);
    try {
        parse_sequential(std::string_view("1 -1 -1 -2"));
    } catch (const ParseError& e) {
        CHECK(e.location() == 3);
    }
}

TEST_CASE("metadata lines are skipped in sequence files") {
    const auto d = parse_sequential(std::string_view("@CONVERTED\n# comment\n5 -1 6 -1 -2\n"));
    CHECK(d.size() == 1);
    CHECK(d.total_length() == 2);
}

TEST_CASE("writers restore the original labels") {
    TransactionalDataset d;
    d.item_labels = {"1", "2"};
    d.transactions = {{0, 1}};
    CHECK(write_transactional(d) == "1 2\n");
    CHECK(write_sequential(parse_sequential(std::string_view("1 -1 1 -1 -2"))) == "1 -1 1 -1 -2\n");
}

TEST_CASE("parse after write is the identity") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = generate_synthetic(100, 40, 6, seed);
        const auto back = parse_transactional(std::string_view(write_transactional(d)));
        CHECK(canonical_form(back) == canonical_form(d));
        CHECK(back.size() == d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            std::vector<std::string> a, b;
            for (auto x : d.transactions[i]) a.push_back(d.item_labels[x]);
            for (auto x : back.transactions[i]) b.push_back(back.item_labels[x]);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            CHECK(a == b);
        }

        SyntheticSequenceOptions o;
        o.avg_itemset_size = 2;
        const auto s = generate_synthetic_sequences(60, 30, 5, seed, o);
        const auto sback = parse_sequential(std::string_view(write_sequential(s)));
        CHECK(canonical_form(sback) == canonical_form(s));
    }
}

TEST_CASE("identifier spaces are dense") {
    const auto s = parse_sequential(std::string_view("3 1 -1 7 -1 -2\n7 -1 1 3 -1 9 -1 -2\n"));
    ItemsetId max_id = 0;
    for (const auto& seq : s.sequences)
        for (auto id : seq) max_id = std::max(max_id, id);
    CHECK(max_id + 1 == s.dictionary.size());
    for (ItemsetId id = 0; id < s.dictionary.size(); ++id) CHECK(s.dictionary.find(s.dictionary.content(id)) == id);
    s.validate();
}

TEST_CASE("synthetic generator") {
    SUBCASE("requested mean length") {
        const auto d = generate_synthetic(5000, 100, 25, 11);
        CHECK(d.size() == 5000);
        const double mean = static_cast<double>(d.total_length()) / 5000.0;
        CHECK(mean == doctest::Approx(25).epsilon(0.04));
        d.validate();
    }
    SUBCASE("forced single transaction") {
        const auto d = generate_synthetic(1, 1, 1, 5);
        REQUIRE(d.size() == 1);
        CHECK(d.transactions[0] == Itemset{0});
    }
    SUBCASE("deterministic") {
        CHECK(write_transactional(generate_synthetic(300, 50, 7, 9)) ==
              write_transactional(generate_synthetic(300, 50, 7, 9)));
        CHECK(write_transactional(generate_synthetic(300, 50, 7, 9)) !=
              write_transactional(generate_synthetic(300, 50, 7, 10)));
    }
    SUBCASE("infeasible parameters") {
        CHECK_THROWS_AS(generate_synthetic(10, 5, 6, 1), ValidationError);
        CHECK_THROWS_AS(generate_synthetic(0, 5, 2, 1), ValidationError);
        CHECK_THROWS_AS(generate_synthetic(10, 5, 0.5, 1), ValidationError);
    }
}

TEST_CASE("file helpers report I/O failures") {
    CHECK_THROWS_AS(load_transactional("/nonexistent/dir/file.dat"), IoError);
    // parent directories are created, but not through a regular file
    const auto blocker = std::filesystem::temp_directory_path() / "bjdm_io_blocker";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(save_sequential(fixtures::two_sequences(), blocker / "out.dat"), IoError);
    std::filesystem::remove(blocker);
}
