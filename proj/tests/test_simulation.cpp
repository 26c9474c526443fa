#include <doctest.h>

#include <set>

#include "lew/config.hpp"
#include "lew/simulation.hpp"

using namespace lew;

namespace {

ExperimentConfig quick(std::size_t rounds = 20) {
    ExperimentConfig c;
    c.rounds = rounds;
    c.runs = 3;
    return c;
}

}  // namespace

TEST_CASE("zero rounds give an empty series and untouched agents") {
    auto c = quick(0);
    const auto r = run_simulation(c, 1);
    CHECK(r.rows.empty());
    Simulation sim(c, 1);
    for (const auto& a : sim.agents()) {
        CHECK(a.lexicon.empty());
        CHECK(a.knowledge_base.empty());
    }
}

TEST_CASE("default schedule plays 2000 interactions and records every round") {
    Simulation sim(ExperimentConfig{}, 5);
    std::size_t rows = 0;
    for (std::size_t r = 0; r < 200; ++r) rows += sim.step_round().has_value();
    CHECK(sim.interactions() == 2000);
    CHECK(sim.rounds_played() == 200);
    CHECK(rows == 200);
    std::size_t events = 0;
    for (const auto& a : sim.agents()) events += a.knowledge_base.size();
    CHECK(events >= 2000);  // self-talk stores once, other bouts twice
    CHECK(events <= 4000);
}

TEST_CASE("recording cadence") {
    auto c = quick(10);
    c.record_every = 3;
    const auto r = run_simulation(c, 9);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].round == 3);
    CHECK(r.rows[2].round == 9);
}

TEST_CASE("runs are deterministic in (config, seed)") {
    const auto c = quick();
    const auto a = run_simulation(c, 42, 3, 7);
    const auto b = run_simulation(c, 42, 3, 7);
    CHECK(a == b);
    CHECK(a.condition_id == 3);
    CHECK(a.run_id == 7);
    CHECK_FALSE(a == run_simulation(c, 43, 3, 7));
}

TEST_CASE("row values are in range and the male is reported only with a male") {
    auto c = quick(30);
    for (const bool male : {false, true}) {
        c.male_present = male;
        c.total_agents = male ? 10 : 9;
        c.p_male = male ? 0.2 : 0.0;
        const auto r = run_simulation(c, 11);
        CHECK(r.male_present == male);
        for (const auto& row : r.rows) {
            CHECK(row.male_lexicon_size.has_value() == male);
            for (double v : {row.f1_implicit, row.implicit_precision, row.implicit_recall, row.explicit_rate,
                             row.seg_correct_rate}) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
            CHECK(row.explicit_rate <= row.seg_correct_rate);
            CHECK(row.mean_agents_per_mapping >= 1.0);
        }
    }
}

TEST_CASE("run seeds are distinct per (condition, run)") {
    std::set<std::uint64_t> seeds;
    for (std::size_t cond = 0; cond < 2; ++cond)
        for (std::size_t run = 0; run < 3; ++run) seeds.insert(run_seed(1, cond, run));
    CHECK(seeds.size() == 6);
    CHECK(run_seed(1, 0, 1) != run_seed(1, 1, 0));
    CHECK(run_seed(1, 0, 0) != run_seed(2, 0, 0));
}

TEST_CASE("sweep ordering does not depend on parallelism") {
    const std::vector<ExperimentConfig> conds = {quick(), [] {
                                                     auto c = quick();
                                                     c.p_intra = 1.0;
                                                     return c;
                                                 }()};
    const auto serial = run_sweep(conds, 3, 17, 1);
    const auto parallel = run_sweep(conds, 3, 17, 4);
    REQUIRE(serial.size() == 6);
    CHECK(serial == parallel);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].condition_id == i / 3);
        CHECK(serial[i].run_id == i % 3);
        CHECK(serial[i] == run_simulation(conds[i / 3], run_seed(17, i / 3, i % 3), i / 3, i % 3));
    }
}

TEST_CASE("sweep reports progress and propagates configuration errors") {
    std::size_t calls = 0;
    const std::vector<ExperimentConfig> conds = {quick(2)};
    (void)run_sweep(conds, 4, 1, 2, [&](std::size_t done, std::size_t total) {
        ++calls;
        CHECK(done <= total);
        CHECK(total == 4);
    });
    CHECK(calls == 4);

    auto bad = quick(2);
    bad.p_intra = 2.0;
    const std::vector<ExperimentConfig> bad_conds = {bad};
    CHECK_THROWS(run_sweep(bad_conds, 2, 1, 2));
}
