#include <doctest.h>

#include <vector>

#include "lew/error.hpp"
#include "lew/society.hpp"

using namespace lew;

namespace {

// Empirical hearer-category frequencies for non-male speakers: male, own group, other groups.
struct Categories {
    double male = 0, own = 0, other = 0;
};

Categories categorize(const Population& pop, const SelectionParams& params, int draws, std::uint64_t seed) {
    Rng rng(seed);
    Categories c;
    int non_male = 0;
    for (int i = 0; i < draws; ++i) {
        const auto [s, h] = select_pair(pop, params, rng);
        if (pop.is_male(s)) continue;
        ++non_male;
        if (pop.is_male(h)) c.male += 1;
        else if (pop.group_of(h) == pop.group_of(s)) c.own += 1;
        else c.other += 1;
    }
    c.male /= non_male;
    c.own /= non_male;
    c.other /= non_male;
    return c;
}

}  // namespace

TEST_CASE("build_population") {
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    SUBCASE("nine agents in three groups") {
        const auto pop = build_population(9, false, thirds);
        REQUIRE(pop.groups().size() == 3);
        for (const auto& g : pop.groups()) CHECK(g.size() == 3);
        CHECK_FALSE(pop.male().has_value());
        CHECK(pop.size() == 9);
    }
    SUBCASE("ten agents with a male") {
        const auto pop = build_population(10, true, thirds);
        REQUIRE(pop.male().has_value());
        CHECK(pop.size() == 10);
        std::vector<int> seen(10);
        for (const auto& g : pop.groups()) {
            CHECK(g.size() == 3);
            for (auto id : g) {
                CHECK_FALSE(pop.is_male(id));
                ++seen[id];
            }
        }
        ++seen[*pop.male()];
        for (int s : seen) CHECK(s == 1);
    }
    SUBCASE("non-integral sizes are rejected") {
        const std::vector<double> halves = {0.5, 0.5};
        CHECK_THROWS_AS(build_population(9, false, halves), ConfigError);
        const std::vector<double> bad_sum = {0.5, 0.4};
        CHECK_THROWS_AS(build_population(10, false, bad_sum), ConfigError);
    }
}

TEST_CASE("selection parameters must be consistent") {
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto no_male = build_population(9, false, thirds);
    CHECK_THROWS_AS(validate(SelectionParams{0.2, 0.5}, no_male), ConfigError);
    CHECK_THROWS_AS(validate(SelectionParams{0.0, 1.5}, no_male), ConfigError);
    CHECK_NOTHROW(validate(SelectionParams{0.0, 1.0}, no_male));
}

TEST_CASE("single group: hearer uniform over everyone including the speaker") {
    const std::vector<double> one = {1.0};
    const auto pop = build_population(4, false, one);
    Rng rng(1);
    std::vector<int> counts(4);
    const int n = 400000;
    for (int i = 0; i < n; ++i) ++counts[select_pair(pop, SelectionParams{0.0, 1.0}, rng).second];
    for (int c : counts) CHECK(std::abs(static_cast<double>(c) / n - 0.25) < 0.005);
    // Other-group mass has nowhere to go but the own group.
    Rng rng2(2);
    for (int i = 0; i < 1000; ++i) CHECK(select_pair(pop, SelectionParams{0.0, 0.0}, rng2).second < 4);
}

TEST_CASE("male, p_intra 0.8: hearer categories 0.2 / 0.64 / 0.16") {
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto pop = build_population(10, true, thirds);
    const auto c = categorize(pop, SelectionParams{0.2, 0.8}, 1000000, 3);
    CHECK(std::abs(c.male - 0.2) < 0.005);
    CHECK(std::abs(c.own - 0.64) < 0.005);
    CHECK(std::abs(c.other - 0.16) < 0.005);
}

TEST_CASE("male speaker never addresses himself and is picked like anyone else") {
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto pop = build_population(10, true, thirds);
    Rng rng(4);
    int male_speaks = 0;
    std::vector<int> hearers(10);
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const auto [s, h] = select_pair(pop, SelectionParams{0.2, 0.8}, rng);
        if (!pop.is_male(s)) continue;
        ++male_speaks;
        CHECK_FALSE(pop.is_male(h));
        ++hearers[h];
    }
    CHECK(std::abs(static_cast<double>(male_speaks) / n - 0.1) < 0.005);
    for (AgentId a = 0; a < 10; ++a) {
        if (pop.is_male(a)) continue;
        CHECK(std::abs(static_cast<double>(hearers[a]) / male_speaks - 1.0 / 9.0) < 0.005);
    }
}

TEST_CASE("no male, three groups, p_intra 1/3 is the uniform-hearer baseline") {
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto pop = build_population(9, false, thirds);
    Rng rng(5);
    std::vector<int> hearers(9);
    const int n = 1000000;
    for (int i = 0; i < n; ++i) ++hearers[select_pair(pop, SelectionParams{0.0, 1.0 / 3.0}, rng).second];
    for (int h : hearers) CHECK(std::abs(static_cast<double>(h) / n - 1.0 / 9.0) < 0.005);
}

TEST_CASE("male present with p_male 0 is never a non-male's hearer") {
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto pop = build_population(10, true, thirds);
    Rng rng(6);
    for (int i = 0; i < 100000; ++i) {
        const auto [s, h] = select_pair(pop, SelectionParams{0.0, 0.0}, rng);
        if (!pop.is_male(s)) CHECK_FALSE(pop.is_male(h));
    }
}
