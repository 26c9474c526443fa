#pragma once

// Scoring of single bouts and of population-wide lexicon structure.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lew/core_model.hpp"
#include "lew/interaction.hpp"
#include "lew/society.hpp"

namespace lew {

struct InteractionScore {
    double seg_correct_rate = 0.0;
    double explicit_rate = 0.0;
    double implicit_precision = 0.0;
    double implicit_recall = 0.0;
    double implicit_f1 = 0.0;
};

/// Segmentation accuracy: hearer words whose [start, end) phoneme span equals a
/// speaker word's span, over the speaker's word count. Explicit understanding:
/// those span matches whose decoded meaning equals the intended chunk. Implicit
/// understanding: multiset overlap of intended and decoded meanings, scored as
/// precision (over decoded), recall (over intended) and their F1.
InteractionScore score_interaction(const InteractionRecord& record);

struct PopulationSnapshot {
    std::vector<LexiconMetrics> agents;  // indexed by agent id
    std::optional<std::size_t> male_lexicon_size;
    // Means over non-male agents.
    double mean_lexicon_size = 0.0;
    double mean_synonymy = 0.0;
    double mean_homonymy = 0.0;
    // Over the deduplicated union of (meaning, form) pairs.
    std::size_t global_size = 0;
    double global_synonymy = 0.0;
    double global_homonymy = 0.0;
    /// Pairs present in every agent's lexicon.
    std::size_t shared_mappings = 0;
    double mean_agents_per_mapping = 0.0;
};

PopulationSnapshot population_metrics(std::span<const AgentState> agents, const Population& population);

}  // namespace lew
