#include "lew/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "lew/interaction.hpp"

namespace lew {

namespace {

enum StreamLabel : std::uint64_t { world_stream = 1, selection_stream = 2, interaction_stream = 3 };

World make_world(const ExperimentConfig& config, std::uint64_t seed) {
    validate(config);
    Rng rng(derive_seed(seed, world_stream));
    return build_world(config.world(), rng);
}

}  // namespace

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t condition, std::size_t run) {
    return derive_seed(derive_seed(master_seed, condition), run);
}

Simulation::Simulation(const ExperimentConfig& config, std::uint64_t seed)
    : config_(config),
      world_(make_world(config, seed)),
      population_(build_population(config.total_agents, config.male_present, config.effective_ratios())),
      selection_rng_(derive_seed(seed, selection_stream)),
      interaction_rng_(derive_seed(seed, interaction_stream)) {
    agents_.resize(population_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        agents_[i].id = static_cast<AgentId>(i);
    }
}

std::optional<RoundRow> Simulation::step_round() {
    const auto params = config_.interaction();
    const auto selection = config_.selection();
    for (std::size_t i = 0; i < config_.interactions_per_round; ++i) {
        const auto [speaker, hearer] = select_pair(population_, selection, selection_rng_);
        const auto record = run_interaction(world_, agents_[speaker], agents_[hearer], params, interaction_rng_);
        const auto score = score_interaction(record);
        pending_.implicit_f1 += score.implicit_f1;
        pending_.implicit_precision += score.implicit_precision;
        pending_.implicit_recall += score.implicit_recall;
        pending_.explicit_rate += score.explicit_rate;
        pending_.seg_correct_rate += score.seg_correct_rate;
        ++pending_count_;
        ++interactions_;
    }
    for (auto& agent : agents_) {
        agent.lexicon.decay_all(config_.decay, config_.prune);
    }
    ++rounds_;
    if (rounds_ % config_.record_every != 0) {
        return std::nullopt;
    }

    RoundRow row;
    row.round = rounds_;
    const auto n = static_cast<double>(pending_count_);
    row.f1_implicit = pending_.implicit_f1 / n;
    row.implicit_precision = pending_.implicit_precision / n;
    row.implicit_recall = pending_.implicit_recall / n;
    row.explicit_rate = pending_.explicit_rate / n;
    row.seg_correct_rate = pending_.seg_correct_rate / n;
    pending_ = {};
    pending_count_ = 0;

    const auto snap = population_metrics(agents_, population_);
    row.mean_agent_lexicon_size = snap.mean_lexicon_size;
    row.male_lexicon_size = snap.male_lexicon_size;
    row.mean_agent_synonymy = snap.mean_synonymy;
    row.mean_agent_homonymy = snap.mean_homonymy;
    row.global_synonymy = snap.global_synonymy;
    row.global_homonymy = snap.global_homonymy;
    row.shared_mappings = snap.shared_mappings;
    row.mean_agents_per_mapping = snap.mean_agents_per_mapping;
    return row;
}

RunResult run_simulation(const ExperimentConfig& config, std::uint64_t seed, std::size_t condition_id,
                         std::size_t run_id) {
    RunResult result{run_id, condition_id, config.male_present, config.p_intra, {}};
    Simulation sim(config, seed);
    result.rows.reserve(config.rounds / config.record_every);
    for (std::size_t r = 0; r < config.rounds; ++r) {
        if (auto row = sim.step_round()) {
            result.rows.push_back(*row);
        }
    }
    return result;
}

std::vector<RunResult> run_sweep(std::span<const ExperimentConfig> conditions, std::size_t runs_per_condition,
                                 std::uint64_t master_seed, std::size_t jobs, const ProgressFn& progress) {
    const auto total = conditions.size() * runs_per_condition;
    std::vector<RunResult> results(total);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const auto task = next.fetch_add(1);
            if (task >= total) {
                return;
            }
            const auto condition = task / runs_per_condition;
            const auto run = task % runs_per_condition;
            try {
                results[task] = run_simulation(conditions[condition], run_seed(master_seed, condition, run),
                                               condition, run);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(total);
                return;
            }
            const auto finished = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(error_mutex);
                progress(finished, total);
            }
        }
    };

    const auto threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(total, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return results;
}

}  // namespace lew
