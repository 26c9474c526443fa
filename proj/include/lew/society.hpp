#pragma once

// Group partition with an optional hub ("male") agent, and partner selection.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lew/core_model.hpp"
#include "lew/rng.hpp"

namespace lew {

/// Disjoint agent groups plus an optional male outside every group.
class Population {
public:
    Population(std::vector<std::vector<AgentId>> groups, std::optional<AgentId> male);

    std::span<const std::vector<AgentId>> groups() const noexcept { return groups_; }
    std::optional<AgentId> male() const noexcept { return male_; }
    bool is_male(AgentId id) const noexcept { return male_ && *male_ == id; }
    std::size_t size() const noexcept { return group_of_.size(); }
    /// Group index of a non-male agent.
    std::size_t group_of(AgentId id) const { return group_of_.at(id); }

private:
    std::vector<std::vector<AgentId>> groups_;
    std::optional<AgentId> male_;
    std::vector<std::size_t> group_of_;
};

struct SelectionParams {
    double p_male = 0.0;
    /// Own-group probability, conditional on not choosing the male.
    double p_intra = 1.0 / 3.0;
};

/// Group i gets ratios[i] * (total - male) agents; every size must be integral.
/// Ids are assigned group by group; the male, if any, takes the last id.
Population build_population(std::size_t total, bool male_present, std::span<const double> ratios);

/// Speaker uniform over everyone. A male speaker addresses a uniform non-male;
/// anyone else picks the male with p_male, else the own group (self included)
/// with p_intra, else a uniformly chosen other group, then a uniform member.
std::pair<AgentId, AgentId> select_pair(const Population& population, const SelectionParams& params, Rng& rng);

void validate(const SelectionParams& params, const Population& population);

}  // namespace lew
