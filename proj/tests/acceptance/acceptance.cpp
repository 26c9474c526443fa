// Acceptance suite: runs the desk-scale replication and the mechanism checks,
// printing one PASS/FAIL line per criterion. Exit status 1 if any fails.
//
//   lew_acceptance [--runs N] [--seed S] [--jobs J] [--out DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lew/analysis.hpp"
#include "lew/config.hpp"
#include "lew/error.hpp"
#include "lew/interaction.hpp"
#include "lew/metrics.hpp"
#include "lew/results_io.hpp"
#include "lew/simulation.hpp"
#include "lew/society.hpp"
#include "lew/stats.hpp"
#include "lew/world.hpp"

using namespace lew;

namespace {

// Upper 0.999 quantile of chi-square with 7 degrees of freedom (scipy.stats.chi2.ppf).
constexpr double kChi2Crit999Df7 = 24.321886347856854;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [failed]");
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string test_str(const WelchResult& w) {
    if (!w.ok()) return std::string(to_string(w.status));
    return "t=" + fmt("%.2f", w.t) + " p=" + fmt("%.3g", w.p);
}

int failures = 0;

void report(int number, const char* name, const Outcome& o) {
    std::printf("criterion %2d %-34s %s  %s\n", number, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

const ConditionSummary& cond(const Analysis& a, bool male, double p) {
    const auto* c = a.find(male, p);
    if (c == nullptr) {
        std::fprintf(stderr, "missing condition\n");
        std::exit(2);
    }
    return *c;
}

WelchResult welch(const ConditionSummary& x, const ConditionSummary& y, Metric m) {
    return welch_t_test(x.of(m), y.of(m));
}

Outcome isolation_effect(const Analysis& a) {
    Outcome o;
    const auto t = trend(a, Metric::f1_implicit, false);
    std::string means;
    for (double m : t.means) means += (means.empty() ? "" : " < ") + fmt("%.4f", m);
    o.require(t.strictly_increasing, "F1 by p_intra " + means);
    const auto w = welch(cond(a, false, 1.0), cond(a, false, 0.0), Metric::f1_implicit);
    o.require(w.ok() && w.t > 0 && w.p < 0.001, "1.0 vs 0: " + test_str(w));
    return o;
}

Outcome male_penalty(const Analysis& a) {
    Outcome o;
    const auto& with = cond(a, true, 1.0 / 3.0);
    const auto& without = cond(a, false, 1.0 / 3.0);
    const auto w = welch(with, without, Metric::f1_implicit);
    o.require(with.stat(Metric::f1_implicit).mean < without.stat(Metric::f1_implicit).mean,
              "F1 male " + fmt("%.4f", with.stat(Metric::f1_implicit).mean) + " vs no male " +
                  fmt("%.4f", without.stat(Metric::f1_implicit).mean));
    o.require(w.ok() && w.t < 0 && w.p < 0.01, test_str(w));
    return o;
}

Outcome male_inflation(const Analysis& a) {
    Outcome o;
    for (const auto* c : a.series(true)) {
        const double male = c->stat(Metric::male_lexicon_size).mean;
        const double members = c->stat(Metric::mean_agent_lexicon_size).mean;
        o.require(male > members, "p=" + fmt("%.2f", c->p_intra) + " " + fmt("%.1f", male) + ">" + fmt("%.1f", members));
    }
    const auto* pooled = a.find_comparison(ComparisonKind::male_vs_members, Metric::male_lexicon_size, std::nullopt);
    o.require(pooled != nullptr && pooled->test.ok() && pooled->test.t > 0 && pooled->test.p < 0.001,
              "pooled " + (pooled ? test_str(pooled->test) : std::string("missing")));
    return o;
}

// Lower member lexicon with the male at every matched p_intra level, and one
// Welch test over all matched conditions pooled (male vs no male).
Outcome member_shrinkage(const Analysis& a) {
    Outcome o;
    std::vector<double> with, without;
    std::string levels;
    bool all_lower = true;
    for (const auto* c : a.series(false)) {
        const auto& m = cond(a, true, c->p_intra);
        const auto& x = m.of(Metric::mean_agent_lexicon_size);
        const auto& y = c->of(Metric::mean_agent_lexicon_size);
        with.insert(with.end(), x.begin(), x.end());
        without.insert(without.end(), y.begin(), y.end());
        const bool lower = m.stat(Metric::mean_agent_lexicon_size).mean < c->stat(Metric::mean_agent_lexicon_size).mean;
        all_lower = all_lower && lower;
        levels += (levels.empty() ? "" : ", ") + fmt("%.2f", c->p_intra) + ": " +
                  fmt("%.1f", m.stat(Metric::mean_agent_lexicon_size).mean) + " vs " +
                  fmt("%.1f", c->stat(Metric::mean_agent_lexicon_size).mean) + " (" +
                  test_str(welch(m, *c, Metric::mean_agent_lexicon_size)) + ")";
    }
    o.require(all_lower, "lower at every level [" + levels + "]");
    const auto w = welch_t_test(with, without);
    o.require(w.ok() && w.t < 0 && w.p < 0.01, "pooled " + test_str(w));
    return o;
}

Outcome homonymy_split(const Analysis& a) {
    Outcome o;
    const auto& iso = cond(a, false, 1.0);
    const auto& base = cond(a, false, 1.0 / 3.0);
    const auto agent = welch(iso, base, Metric::mean_agent_homonymy);
    const auto global = welch(iso, base, Metric::global_homonymy);
    o.require(agent.ok() && agent.t > 0 && agent.p < 0.01, "agent homonymy up: " + test_str(agent));
    o.require(global.ok() && global.t < 0 && global.p < 0.01, "global homonymy down: " + test_str(global));
    return o;
}

Outcome isolated_lexicon(const Analysis& a) {
    Outcome o;
    const auto& iso = cond(a, false, 1.0);
    const auto& base = a.condition(a.baseline);
    const auto size = welch(iso, base, Metric::mean_agent_lexicon_size);
    const auto syn = welch(iso, base, Metric::mean_agent_synonymy);
    o.require(size.ok() && size.t < 0 && size.p < 0.01, "lexicon size down: " + test_str(size));
    o.require(syn.ok() && syn.t < 0 && syn.p < 0.01, "agent synonymy down: " + test_str(syn));
    return o;
}

Outcome global_synonymy_null(const Analysis& a) {
    Outcome o;
    int insignificant = 0, total = 0;
    for (const auto& c : a.comparisons) {
        if (c.kind != ComparisonKind::adjacent || c.metric != Metric::global_synonymy) continue;
        ++total;
        insignificant += c.test.ok() && c.test.p > 0.05;
    }
    const auto text = report_text(a);
    const auto section = text.find("Global synonymy");
    const auto next = text.find("\nGlobal homonymy");
    const bool shown = section != std::string::npos &&
                       text.substr(section, next - section).find("(not significant)") != std::string::npos;
    o.require(insignificant > 0, std::to_string(insignificant) + " of " + std::to_string(total) +
                                     " adjacent comparisons with p > 0.05");
    o.require(shown, "listed in the analysis report");
    return o;
}

Outcome selection_distribution() {
    Outcome o;
    struct Case {
        double p_male, p_intra;
        bool male;
    };
    const Case cases[] = {{0.2, 0.8, true}, {0.0, 1.0 / 3.0, false}, {0.2, 1.0, true}};
    const std::vector<double> thirds = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        const auto pop = build_population(c.male ? 10 : 9, c.male, thirds);
        Rng rng(seed++);
        // Categories per non-male speaker: male, own group, first other group, second other group.
        std::array<double, 4> counts{};
        std::array<double, 3> male_to_group{};
        double non_male = 0, male_speaks = 0;
        for (int i = 0; i < 1000000; ++i) {
            const auto [s, h] = select_pair(pop, SelectionParams{c.p_male, c.p_intra}, rng);
            if (pop.is_male(s)) {
                ++male_speaks;
                if (pop.is_male(h)) male_to_group[0] = -1e9;  // impossible cell
                else male_to_group[pop.group_of(h)] += 1;
                continue;
            }
            ++non_male;
            if (pop.is_male(h)) {
                counts[0] += 1;
            } else {
                const auto g = pop.group_of(s), hg = pop.group_of(h);
                if (g == hg) counts[1] += 1;
                else counts[2 + ((hg + 3 - g) % 3) - 1] += 1;
            }
        }
        const double expected[4] = {c.p_male, (1 - c.p_male) * c.p_intra, (1 - c.p_male) * (1 - c.p_intra) / 2,
                                    (1 - c.p_male) * (1 - c.p_intra) / 2};
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(counts[k] / non_male - expected[k]));
        if (c.male) {
            for (int g = 0; g < 3; ++g) worst = std::max(worst, std::abs(male_to_group[g] / male_speaks - 1.0 / 3.0));
        }
        o.require(worst <= 0.005, "(" + fmt("%.1f", c.p_male) + "," + fmt("%.2f", c.p_intra) +
                                      ",3) max dev " + fmt("%.4f", worst));
    }
    return o;
}

Outcome mechanisms() {
    Outcome o;
    {
        Rng rng(1);
        const std::vector<Token> tokens = {1, 2, 3, 4};
        std::map<std::vector<std::size_t>, double> counts;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            std::vector<std::size_t> lengths;
            for (const auto& c : random_segmentation(tokens, 0.5, rng)) lengths.push_back(c.size());
            counts[lengths] += 1;
        }
        double chi2 = 0.0;
        for (const auto& [k, v] : counts) chi2 += (v - n / 8.0) * (v - n / 8.0) / (n / 8.0);
        o.require(counts.size() == 8 && chi2 < kChi2Crit999Df7, "segmentation chi2=" + fmt("%.2f", chi2));
    }
    Rng world_rng(2);
    const auto world = build_world(WorldConfig{}, world_rng);
    {
        bool found = false;
        std::uint64_t seed = 0;
        for (; seed < 10000 && !found; ++seed) {
            Rng rng(seed);
            AgentState agent;
            const auto rec = run_interaction(world, agent, agent, InteractionParams{}, rng);
            for (const auto& f : rec.speaker_words) {
                int meanings = 0;
                for (const auto& m : agent.lexicon.mappings()) meanings += m.form == f;
                found = found || meanings >= 2;
            }
        }
        o.require(found, "self-talk homonymy at seed " + std::to_string(seed - 1));
    }
    {
        const auto pop = build_population(10, true, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
        std::vector<AgentState> agents(10);
        for (AgentId i = 0; i < 10; ++i) agents[i].id = i;
        Rng sel(3), rng(4);
        bool noiseless = true;
        for (int i = 0; i < 10000; ++i) {
            const auto [s, h] = select_pair(pop, SelectionParams{0.2, 0.5}, sel);
            const auto rec = run_interaction(world, agents[s], agents[h], InteractionParams{}, rng);
            noiseless = noiseless && concatenate(rec.speaker_words) == concatenate(rec.hearer_words);
        }
        o.require(noiseless, "noiseless channel over 10^4 bouts");
    }
    {
        InteractionParams sync;
        sync.synchrony = true;
        bool perfect = true;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            // A lexicon covering every chunk this bout can produce, one unique form per chunk.
            Rng probe_rng(i);
            AgentState ps, ph;
            ph.id = 1;
            const auto probe = run_interaction(world, ps, ph, sync, probe_rng);
            Lexicon shared;
            std::uint16_t next = 0;
            for (const auto& c : probe.speaker_chunks) {
                Rng r(0);
                if (!shared.retrieve_form(c, r)) shared.add_or_reinforce(c, Form{Phoneme{next++}, Phoneme{0}});
            }
            AgentState s{0, shared, {}}, h{1, shared, {}};
            Rng replay(i);
            perfect = perfect && score_interaction(run_interaction(world, s, h, sync, replay)).implicit_f1 == 1.0;
        }
        o.require(perfect, "synchrony + shared lexicon F1 = 1");
    }
    return o;
}

Outcome determinism(std::uint64_t seed) {
    Outcome o;
    auto base = ExperimentConfig{};
    const auto conditions = paper_conditions(base);
    auto to_csv = [](const std::vector<RunResult>& r) {
        std::ostringstream out;
        write_results(r, out);
        return out.str();
    };
    const auto serial = to_csv(run_sweep(conditions, 4, seed, 1));
    const auto again = to_csv(run_sweep(conditions, 4, seed, 1));
    const auto parallel = to_csv(run_sweep(conditions, 4, seed, 8));
    o.require(serial == again && serial == parallel, "CSV bytes equal at jobs 1 and 8");

    std::istringstream in(serial);
    const auto back = read_results(in);
    o.require(to_csv(back) == serial && back == run_sweep(conditions, 4, seed, 2), "write/read round trip");

    const std::vector<double> a = {1, 2, 3, 4, 5}, b = {3, 4, 5, 6, 7};
    const auto w = welch_t_test(a, b);
    o.require(w.ok() && std::abs(w.t + 2.0) < 1e-12 && std::abs(w.df - 8.0) < 1e-9 && std::abs(w.p - 0.0805) < 1e-4,
              "welch example t=" + fmt("%.3f", w.t) + " df=" + fmt("%.3f", w.df) + " p=" + fmt("%.5f", w.p));
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--runs")) runs = std::strtoull(argv[i + 1], nullptr, 10);
        else if (!std::strcmp(argv[i], "--seed")) seed = std::strtoull(argv[i + 1], nullptr, 10);
        else if (!std::strcmp(argv[i], "--jobs")) jobs = std::strtoull(argv[i + 1], nullptr, 10);
        else if (!std::strcmp(argv[i], "--out")) out = argv[i + 1];
    }

    const auto start = std::chrono::steady_clock::now();
    const auto conditions = paper_conditions();
    const auto results = run_sweep(conditions, runs, seed, jobs);
    const auto analysis = analyze(results);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("desk-scale replication: %zu conditions x %zu runs, master seed %llu, %.1f s\n", conditions.size(),
                runs, static_cast<unsigned long long>(seed), seconds);
    if (!out.empty()) {
        try {
            write_results(results, out + "/results.csv");
            write_analysis(analysis, out);
        } catch (const IoError& e) {
            std::fprintf(stderr, "warning: %s\n", e.what());
        }
    }

    report(1, "isolation effect on F1", isolation_effect(analysis));
    report(2, "male penalty on F1", male_penalty(analysis));
    report(3, "male lexicon inflation", male_inflation(analysis));
    report(4, "member lexicon shrinkage", member_shrinkage(analysis));
    report(5, "homonymy split", homonymy_split(analysis));
    report(6, "isolated lexicon and synonymy", isolated_lexicon(analysis));
    report(7, "global synonymy null", global_synonymy_null(analysis));
    report(8, "selection distribution", selection_distribution());
    report(9, "mechanism checks", mechanisms());
    report(10, "determinism and round trip", determinism(seed));

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
