#include "lew/society.hpp"

#include <cmath>
#include <limits>

#include "lew/error.hpp"

namespace lew {

Population::Population(std::vector<std::vector<AgentId>> groups, std::optional<AgentId> male)
    : groups_(std::move(groups)), male_(male) {
    std::size_t total = male ? 1 : 0;
    for (const auto& g : groups_) {
        total += g.size();
    }
    constexpr auto unassigned = std::numeric_limits<std::size_t>::max();
    group_of_.assign(total, unassigned);
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
        if (groups_[gi].empty()) {
            throw ConfigError("ratios", "group " + std::to_string(gi) + " is empty");
        }
        for (const auto id : groups_[gi]) {
            if (id >= total || group_of_[id] != unassigned || (male && *male == id)) {
                throw ConfigError("ratios", "groups must partition the non-male agents");
            }
            group_of_[id] = gi;
        }
    }
    if (male && *male >= total) {
        throw ConfigError("male_present", "male id out of range");
    }
    if (groups_.empty()) {
        throw ConfigError("n_groups", "at least one group is required");
    }
}

Population build_population(std::size_t total, bool male_present, std::span<const double> ratios) {
    if (ratios.empty()) {
        throw ConfigError("n_groups", "at least one group is required");
    }
    if (total < (male_present ? 2u : 1u)) {
        throw ConfigError("total_agents", "too few agents for the requested structure");
    }
    const auto members = total - (male_present ? 1 : 0);
    double ratio_sum = 0.0;
    std::vector<std::size_t> sizes;
    for (const auto r : ratios) {
        if (!(r >= 0.0)) {
            throw ConfigError("ratios", "ratios must be non-negative");
        }
        ratio_sum += r;
        const double exact = r * static_cast<double>(members);
        const double rounded = std::round(exact);
        if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
            throw ConfigError("ratios", "group size " + std::to_string(exact) + " is not an integer");
        }
        sizes.push_back(static_cast<std::size_t>(rounded));
    }
    if (std::abs(ratio_sum - 1.0) > 1e-9) {
        throw ConfigError("ratios", "ratios must sum to 1");
    }

    std::vector<std::vector<AgentId>> groups;
    AgentId next = 0;
    for (const auto size : sizes) {
        auto& g = groups.emplace_back();
        for (std::size_t i = 0; i < size; ++i) {
            g.push_back(next++);
        }
    }
    std::optional<AgentId> male;
    if (male_present) {
        male = next;
    }
    return Population(std::move(groups), male);
}

void validate(const SelectionParams& params, const Population& population) {
    if (!(params.p_male >= 0.0 && params.p_male <= 1.0)) {
        throw ConfigError("p_male", "must be in [0, 1]");
    }
    if (!(params.p_intra >= 0.0 && params.p_intra <= 1.0)) {
        throw ConfigError("p_intra", "must be in [0, 1]");
    }
    if (!population.male() && params.p_male != 0.0) {
        throw ConfigError("p_male", "a male-directed rate requires a male");
    }
}

std::pair<AgentId, AgentId> select_pair(const Population& population, const SelectionParams& params, Rng& rng) {
    const auto total = population.size();
    const auto speaker = static_cast<AgentId>(rng.index(total));
    const auto groups = population.groups();

    if (population.is_male(speaker)) {
        auto hearer = static_cast<AgentId>(rng.index(total - 1));
        if (hearer >= speaker) {
            ++hearer;
        }
        return {speaker, hearer};
    }
    if (population.male() && rng.chance(params.p_male)) {
        return {speaker, *population.male()};
    }
    const auto own = population.group_of(speaker);
    std::size_t target = own;
    if (groups.size() > 1 && !rng.chance(params.p_intra)) {
        target = rng.index(groups.size() - 1);
        if (target >= own) {
            ++target;
        }
    }
    const auto& members = groups[target];
    return {speaker, members[rng.index(members.size())]};
}

}  // namespace lew
