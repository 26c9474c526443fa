#pragma once

// Experiment configuration: defaults, `key = value` parsing and validation.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lew/interaction.hpp"
#include "lew/society.hpp"
#include "lew/world.hpp"

namespace lew {

struct ExperimentConfig {
    // Society
    std::size_t total_agents = 9;
    bool male_present = false;
    std::size_t n_groups = 3;
    std::vector<double> ratios;  // empty: equal shares
    double p_male = 0.0;
    double p_intra = 1.0 / 3.0;

    // World
    std::size_t event_types = 100;
    double zipf_s = 1.0;
    std::size_t phonemes = 41;
    std::size_t animates = 10;
    std::size_t inanimates = 10;
    std::size_t max_depth = 2;
    std::size_t max_arity = 3;
    double min_base_fraction = 0.2;

    // Interaction
    double boundary_prob = 0.5;
    bool synchrony = false;
    bool hearer_reinforce_retrievals = true;

    // Forgetting, applied once per round
    double decay = 0.95;
    double prune = 0.1;

    // Schedule
    std::size_t rounds = 200;
    std::size_t interactions_per_round = 10;
    std::size_t runs = 600;
    std::uint64_t master_seed = 1;
    std::size_t record_every = 1;

    // Sweep grid; empty lists mean "use the scalar value".
    std::vector<bool> grid_male_present;
    std::vector<double> grid_p_intra;
    double grid_p_male = 0.2;

    std::vector<double> effective_ratios() const;
    WorldConfig world() const;
    InteractionParams interaction() const;
    SelectionParams selection() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ConfigKey {
    std::string_view name;
    std::string_view default_value;
    std::string_view help;
};

/// Every accepted key with its default, in documentation order.
std::span<const ConfigKey> config_keys();

/// Parse `key = value` lines ('#' starts a comment). Missing keys take their
/// defaults; p_male defaults to 0.2 when a male is present and 0 otherwise.
/// Reals accept a/b fractions. Throws FormatError (with line) on syntax
/// problems and ConfigError (with key) on unknown keys or invalid values.
ExperimentConfig load_config(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

/// Throws ConfigError naming the first offending key.
void validate(const ExperimentConfig& config);

/// One configuration per grid cell: male setting outer, p_intra inner.
/// When the grid sets the male flag, the group members stay as configured and
/// the male is added on top (9 members -> 10 agents with a male).
/// Without grid keys the config itself is the only condition.
std::vector<ExperimentConfig> expand_grid(const ExperimentConfig& config);

/// The ten reference conditions: male absent/present x p_intra in {0, 1/3, 0.5, 0.8, 1}.
std::vector<ExperimentConfig> paper_conditions(const ExperimentConfig& base = {});

}  // namespace lew
