#pragma once

// Deterministic run execution and multi-condition sweeps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lew/config.hpp"
#include "lew/core_model.hpp"
#include "lew/metrics.hpp"
#include "lew/society.hpp"
#include "lew/world.hpp"

namespace lew {

/// One recorded round: bout-score means since the previous row, plus the
/// population snapshot after that round's forgetting step.
struct RoundRow {
    std::size_t round = 0;  // 1-based count of completed rounds
    double f1_implicit = 0.0;
    double implicit_precision = 0.0;
    double implicit_recall = 0.0;
    double explicit_rate = 0.0;
    double seg_correct_rate = 0.0;
    double mean_agent_lexicon_size = 0.0;
    std::optional<std::size_t> male_lexicon_size;
    double mean_agent_synonymy = 0.0;
    double mean_agent_homonymy = 0.0;
    double global_synonymy = 0.0;
    double global_homonymy = 0.0;
    std::size_t shared_mappings = 0;
    double mean_agents_per_mapping = 0.0;

    friend bool operator==(const RoundRow&, const RoundRow&) = default;
};

struct RunResult {
    std::size_t run_id = 0;
    std::size_t condition_id = 0;
    bool male_present = false;
    double p_intra = 0.0;
    std::vector<RoundRow> rows;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Seed of run `run` in condition `condition` under `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t condition, std::size_t run);

/// A single run's mutable state, stepped one round at a time.
class Simulation {
public:
    Simulation(const ExperimentConfig& config, std::uint64_t seed);

    /// Plays one round of bouts, applies forgetting, and returns the round's
    /// row when the recording cadence asks for one.
    std::optional<RoundRow> step_round();

    const World& world() const noexcept { return world_; }
    const Population& population() const noexcept { return population_; }
    std::span<const AgentState> agents() const noexcept { return agents_; }
    std::size_t rounds_played() const noexcept { return rounds_; }
    std::size_t interactions() const noexcept { return interactions_; }

private:
    ExperimentConfig config_;
    World world_;
    Population population_;
    std::vector<AgentState> agents_;
    Rng selection_rng_;
    Rng interaction_rng_;
    std::size_t rounds_ = 0;
    std::size_t interactions_ = 0;
    InteractionScore pending_{};
    std::size_t pending_count_ = 0;
};

RunResult run_simulation(const ExperimentConfig& config, std::uint64_t seed, std::size_t condition_id = 0,
                         std::size_t run_id = 0);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (condition, run) pair on up to `jobs` threads. Results are
/// ordered by condition then run and do not depend on `jobs`.
std::vector<RunResult> run_sweep(std::span<const ExperimentConfig> conditions, std::size_t runs_per_condition,
                                 std::uint64_t master_seed, std::size_t jobs, const ProgressFn& progress = {});

}  // namespace lew
