#include "lew/world.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lew/error.hpp"

namespace lew {

namespace {

std::size_t pick_cumulative(std::span<const double> cumulative, Rng& rng) {
    const double u = rng.unit() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::string random_name(std::size_t length, Rng& rng) {
    std::string name(length, 'a');
    for (auto& c : name) {
        c = static_cast<char>('a' + rng.index(26));
    }
    return name;
}

}  // namespace

std::string_view to_string(Sort sort) {
    switch (sort) {
        case Sort::animate:
            return "animate";
        case Sort::inanimate:
            return "inanimate";
        case Sort::event_slot:
            return "event";
    }
    return "?";
}

bool EventType::is_base() const {
    return std::find(arg_sorts.begin(), arg_sorts.end(), Sort::event_slot) == arg_sorts.end();
}

World::World(std::vector<EntitySpec> entities, std::vector<EventTypeSpec> types, double zipf_s,
             std::size_t max_depth)
    : zipf_s_(zipf_s), max_depth_(max_depth) {
    if (!(zipf_s >= 0.0) || !std::isfinite(zipf_s)) {
        throw ConfigError("zipf_s", "exponent must be a finite non-negative number");
    }
    if (types.empty()) {
        throw ConfigError("event_types", "at least one event type is required");
    }

    std::unordered_set<std::string> seen;
    auto intern = [&](std::string name, const char* key) {
        if (name.empty()) {
            throw ConfigError(key, "empty token name");
        }
        if (!seen.insert(name).second) {
            throw ConfigError(key, "duplicate token name '" + name + "'");
        }
        names_.push_back(std::move(name));
        return static_cast<Token>(names_.size() - 1);
    };

    for (auto& spec : entities) {
        if (spec.sort == Sort::event_slot) {
            throw ConfigError("entities", "an entity cannot have the event sort");
        }
        const auto index = static_cast<std::uint32_t>(entities_.size());
        entities_.push_back({intern(std::move(spec.atom), "entities"), spec.sort});
        pools_[static_cast<std::size_t>(spec.sort)].push_back(index);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < types.size(); ++i) {
        auto& spec = types[i];
        for (const auto sort : spec.arg_sorts) {
            if (sort != Sort::event_slot && pools_[static_cast<std::size_t>(sort)].empty()) {
                throw ConfigError(sort == Sort::animate ? "animates" : "inanimates",
                                  "event type '" + spec.predicate + "' needs an " + std::string(to_string(sort)) +
                                      " argument but that pool is empty");
            }
        }
        EventType type{intern(std::move(spec.predicate), "event_types"), std::move(spec.arg_sorts), i + 1};
        total += std::pow(static_cast<double>(type.rank), -zipf_s);
        cumulative_.push_back(total);
        if (type.is_base()) {
            base_types_.push_back(static_cast<EventTypeId>(i));
            const double prev = base_cumulative_.empty() ? 0.0 : base_cumulative_.back();
            base_cumulative_.push_back(prev + std::pow(static_cast<double>(type.rank), -zipf_s));
        }
        types_.push_back(std::move(type));
    }
    if (base_types_.empty()) {
        throw ConfigError("event_types", "no event type without an event argument (recursion base)");
    }
}

double World::type_probability(EventTypeId id) const {
    return std::pow(static_cast<double>(type(id).rank), -zipf_s_) / cumulative_.back();
}

EventTypeId World::sample_event_type(Rng& rng) const {
    return static_cast<EventTypeId>(pick_cumulative(cumulative_, rng));
}

EventTypeId World::sample_base_type(Rng& rng) const {
    return base_types_[pick_cumulative(base_cumulative_, rng)];
}

EventInstance World::instantiate_event(EventTypeId type_id, std::size_t depth, Rng& rng) const {
    const auto& signature = type(type_id);
    EventInstance event;
    event.type = type_id;
    event.args.reserve(signature.arg_sorts.size());
    for (const auto sort : signature.arg_sorts) {
        if (sort == Sort::event_slot) {
            // A nested event may itself recurse only while its own depth stays below the cap.
            const auto sub_type = depth + 1 < max_depth_ ? sample_event_type(rng) : sample_base_type(rng);
            event.args.push_back({EventInstance::Arg::Kind::event, static_cast<std::uint32_t>(event.nested.size())});
            event.nested.push_back(instantiate_event(sub_type, depth + 1, rng));
        } else {
            const auto& members = pools_[static_cast<std::size_t>(sort)];
            event.args.push_back({EventInstance::Arg::Kind::entity, members[rng.index(members.size())]});
        }
    }
    return event;
}

EventInstance World::generate_event(Rng& rng) const {
    return instantiate_event(sample_event_type(rng), 0, rng);
}

TokenSequence World::linearize(const EventInstance& event) const {
    TokenSequence out;
    linearize_into(event, out);
    return out;
}

void World::linearize_into(const EventInstance& event, TokenSequence& out) const {
    out.push_back(type(event.type).predicate);
    for (const auto& arg : event.args) {
        if (arg.kind == EventInstance::Arg::Kind::entity) {
            out.push_back(entities_.at(arg.index).atom);
        } else {
            linearize_into(event.nested.at(arg.index), out);
        }
    }
}

std::string World::render(std::span<const Token> tokens) const {
    std::string out;
    for (const auto t : tokens) {
        if (!out.empty()) {
            out += ' ';
        }
        out += token_name(t);
    }
    return out;
}

World build_world(const WorldConfig& config, Rng& rng) {
    if (config.event_types == 0) {
        throw ConfigError("event_types", "must be positive");
    }
    if (!(config.min_base_fraction >= 0.0 && config.min_base_fraction <= 1.0)) {
        throw ConfigError("min_base_fraction", "must be in [0, 1]");
    }
    constexpr std::size_t name_length = 5;
    std::unordered_set<std::string> used;
    auto fresh_name = [&] {
        for (;;) {
            auto name = random_name(name_length, rng);
            if (used.insert(name).second) {
                return name;
            }
        }
    };

    std::vector<EntitySpec> entities;
    for (std::size_t i = 0; i < config.animates; ++i) {
        entities.push_back({fresh_name(), Sort::animate});
    }
    for (std::size_t i = 0; i < config.inanimates; ++i) {
        entities.push_back({fresh_name(), Sort::inanimate});
    }

    std::vector<EventTypeSpec> types;
    std::size_t bases = 0;
    for (std::size_t i = 0; i < config.event_types; ++i) {
        EventTypeSpec spec{fresh_name(), {}};
        const auto arity = rng.index(config.max_arity + 1);
        for (std::size_t a = 0; a < arity; ++a) {
            spec.arg_sorts.push_back(static_cast<Sort>(rng.index(3)));
        }
        if (std::find(spec.arg_sorts.begin(), spec.arg_sorts.end(), Sort::event_slot) == spec.arg_sorts.end()) {
            ++bases;
        }
        types.push_back(std::move(spec));
    }

    // Enforce the recursion-base quota by grounding event slots, last type first.
    const auto required =
        static_cast<std::size_t>(std::ceil(config.min_base_fraction * static_cast<double>(config.event_types)));
    for (auto it = types.rbegin(); it != types.rend() && bases < std::max<std::size_t>(required, 1); ++it) {
        bool changed = false;
        for (auto& sort : it->arg_sorts) {
            if (sort == Sort::event_slot) {
                sort = static_cast<Sort>(rng.index(2));
                changed = true;
            }
        }
        bases += changed ? 1 : 0;
    }

    return World(std::move(entities), std::move(types), config.zipf_s, config.max_depth);
}

std::vector<Meaning> random_segmentation(std::span<const Token> tokens, double boundary_prob, Rng& rng) {
    std::vector<Meaning> chunks;
    if (tokens.empty()) {
        return chunks;
    }
    std::size_t start = 0;
    for (std::size_t cut = 1; cut < tokens.size(); ++cut) {
        if (rng.chance(boundary_prob)) {
            chunks.emplace_back(std::vector<Token>(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                                                   tokens.begin() + static_cast<std::ptrdiff_t>(cut)));
            start = cut;
        }
    }
    chunks.emplace_back(std::vector<Token>(tokens.begin() + static_cast<std::ptrdiff_t>(start), tokens.end()));
    return chunks;
}

}  // namespace lew
