#pragma once

// One communicative bout between a speaker and a hearer (possibly the same agent).

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "lew/core_model.hpp"
#include "lew/rng.hpp"
#include "lew/world.hpp"

namespace lew {

struct InteractionParams {
    std::size_t inventory_size = 41;
    /// Cut probability for individuation boundaries and asynchronous hearer junctions.
    double boundary_prob = 0.5;
    /// Hearer cuts the utterance exactly where the speaker's words end.
    bool synchrony = false;
    /// Hearer also reinforces mappings it retrieved, not only fallback guesses.
    bool hearer_reinforces_retrievals = true;
};

struct Production {
    std::vector<Form> words;                         // parallel to the chunks
    std::vector<std::pair<Meaning, Form>> updates;   // committed after the bout
};

struct Decoding {
    std::vector<Meaning> meanings;  // parallel to the hearer's words
    std::vector<bool> retrieved;    // true where the meaning came from the lexicon
};

struct InteractionRecord {
    AgentId speaker = 0;
    AgentId hearer = 0;
    std::shared_ptr<const EventInstance> event;
    std::vector<Meaning> speaker_chunks;
    std::vector<Form> speaker_words;
    std::vector<Meaning> hearer_chunks;  // hearer's own individuation of the event
    std::vector<Form> hearer_words;
    std::vector<Meaning> hearer_meanings;
    // Internal word boundaries as phoneme offsets into the utterance.
    std::vector<std::size_t> speaker_boundaries;
    std::vector<std::size_t> hearer_boundaries;
};

/// Known chunks use the speaker's heaviest form; unknown ones get a fresh
/// single phoneme drawn uniformly from the inventory.
Production produce(const Lexicon& speaker_lexicon, std::span<const Meaning> chunks, std::size_t inventory_size,
                   Rng& rng);

/// With synchrony, cut at `speaker_boundaries`; otherwise each internal
/// junction is a cut with probability `junction_prob`.
std::vector<Form> hearer_segment(std::span<const Phoneme> utterance, bool synchrony,
                                 std::span<const std::size_t> speaker_boundaries, double junction_prob, Rng& rng);

/// Retrieve a meaning per word; unknown words fall back on the hearer's own
/// chunks (positionally when the counts agree, uniformly at random otherwise).
Decoding decode(const Lexicon& snapshot, std::span<const Form> words, std::span<const Meaning> own_chunks,
                Rng& rng);

std::vector<Phoneme> concatenate(std::span<const Form> words);
std::vector<std::size_t> internal_boundaries(std::span<const Form> words);

/// Runs a full bout. `speaker` and `hearer` may refer to the same agent
/// (self-talk). Lexicon updates for both sides are committed only after the
/// hearer has decoded, so decoding always sees the pre-bout lexicon.
InteractionRecord run_interaction(const World& world, AgentState& speaker, AgentState& hearer,
                                  const InteractionParams& params, Rng& rng);

}  // namespace lew
