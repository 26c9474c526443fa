#pragma once

// Entities, Zipf-ranked event types, recursive event instances, their
// linearization, and random individuation (segmentation) of token sequences.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lew/core_model.hpp"
#include "lew/rng.hpp"

namespace lew {

enum class Sort : std::uint8_t { animate, inanimate, event_slot };

std::string_view to_string(Sort sort);

using EventTypeId = std::uint32_t;
using TokenSequence = std::vector<Token>;

struct Entity {
    Token atom = 0;
    Sort sort = Sort::animate;
};

struct EventType {
    Token predicate = 0;
    std::vector<Sort> arg_sorts;
    std::size_t rank = 1;  // Zipf rank, 1-based

    bool is_base() const;
};

/// A filled event. Entity arguments index World::entities(); event arguments
/// index `nested`.
struct EventInstance {
    struct Arg {
        enum class Kind : std::uint8_t { entity, event };
        Kind kind = Kind::entity;
        std::uint32_t index = 0;
        friend bool operator==(const Arg&, const Arg&) = default;
    };

    EventTypeId type = 0;
    std::vector<Arg> args;
    std::vector<EventInstance> nested;

    friend bool operator==(const EventInstance&, const EventInstance&) = default;
};

struct WorldConfig {
    std::size_t animates = 10;
    std::size_t inanimates = 10;
    std::size_t event_types = 100;
    std::size_t max_arity = 3;
    double zipf_s = 1.0;
    std::size_t max_depth = 2;
    /// Fraction of generated types forced to have no event-slot argument.
    double min_base_fraction = 0.2;
};

struct EntitySpec {
    std::string atom;
    Sort sort = Sort::animate;
};

struct EventTypeSpec {
    std::string predicate;
    std::vector<Sort> arg_sorts;
};

/// Immutable world: entity pools, event types and their Zipf distribution.
class World {
public:
    /// Types are ranked in the order given (first = rank 1).
    /// Throws ConfigError on duplicate names, unsatisfiable signatures, a
    /// missing recursion base, or a negative exponent.
    World(std::vector<EntitySpec> entities, std::vector<EventTypeSpec> types, double zipf_s, std::size_t max_depth);

    std::span<const Entity> entities() const noexcept { return entities_; }
    std::span<const std::uint32_t> pool(Sort sort) const { return pools_.at(static_cast<std::size_t>(sort)); }
    std::span<const EventType> types() const noexcept { return types_; }
    const EventType& type(EventTypeId id) const { return types_.at(id); }
    std::string_view token_name(Token token) const { return names_.at(token); }
    double zipf_s() const noexcept { return zipf_s_; }
    std::size_t max_depth() const noexcept { return max_depth_; }

    /// P(type) = rank^-s / sum_r r^-s.
    double type_probability(EventTypeId id) const;

    EventTypeId sample_event_type(Rng& rng) const;
    EventTypeId sample_base_type(Rng& rng) const;
    /// Event slots of an instance at `depth` take a Zipf-sampled type when
    /// depth + 1 < max_depth, otherwise a base type.
    EventInstance instantiate_event(EventTypeId type, std::size_t depth, Rng& rng) const;
    /// Zipf-sampled top-level event at depth 0.
    EventInstance generate_event(Rng& rng) const;

    /// Depth-first pre-order: predicate, then each argument.
    TokenSequence linearize(const EventInstance& event) const;
    std::string render(std::span<const Token> tokens) const;

private:
    void linearize_into(const EventInstance& event, TokenSequence& out) const;

    std::vector<std::string> names_;
    std::vector<Entity> entities_;
    std::array<std::vector<std::uint32_t>, 2> pools_;
    std::vector<EventType> types_;
    std::vector<double> cumulative_;       // over all types, by rank
    std::vector<EventTypeId> base_types_;  // in rank order
    std::vector<double> base_cumulative_;
    double zipf_s_;
    std::size_t max_depth_;
};

/// Deterministic in (config, rng state). Names are unique random five-letter strings.
World build_world(const WorldConfig& config, Rng& rng);

/// Each of the k-1 internal boundaries is cut independently with
/// `boundary_prob`; chunks concatenate back to `tokens`.
std::vector<Meaning> random_segmentation(std::span<const Token> tokens, double boundary_prob, Rng& rng);

}  // namespace lew
