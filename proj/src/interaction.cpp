#include "lew/interaction.hpp"

#include <algorithm>

namespace lew {

Production produce(const Lexicon& speaker_lexicon, std::span<const Meaning> chunks, std::size_t inventory_size,
                   Rng& rng) {
    Production out;
    out.words.reserve(chunks.size());
    out.updates.reserve(chunks.size());
    for (const auto& chunk : chunks) {
        auto word = speaker_lexicon.retrieve_form(chunk, rng);
        if (!word) {
            word = Form{Phoneme{static_cast<std::uint16_t>(rng.index(inventory_size))}};
        }
        out.updates.emplace_back(chunk, *word);
        out.words.push_back(std::move(*word));
    }
    return out;
}

std::vector<Form> hearer_segment(std::span<const Phoneme> utterance, bool synchrony,
                                 std::span<const std::size_t> speaker_boundaries, double junction_prob, Rng& rng) {
    std::vector<Form> words;
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
        words.emplace_back(std::vector<Phoneme>(utterance.begin() + static_cast<std::ptrdiff_t>(start),
                                                utterance.begin() + static_cast<std::ptrdiff_t>(end)));
        start = end;
    };
    if (synchrony) {
        for (const auto cut : speaker_boundaries) {
            emit(cut);
        }
    } else {
        for (std::size_t cut = 1; cut < utterance.size(); ++cut) {
            if (rng.chance(junction_prob)) {
                emit(cut);
            }
        }
    }
    if (start < utterance.size()) {
        emit(utterance.size());
    }
    return words;
}

Decoding decode(const Lexicon& snapshot, std::span<const Form> words, std::span<const Meaning> own_chunks,
                Rng& rng) {
    Decoding out;
    out.meanings.reserve(words.size());
    out.retrieved.reserve(words.size());
    const bool aligned = words.size() == own_chunks.size();
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto meaning = snapshot.retrieve_meaning(words[i], rng);
        if (meaning) {
            out.meanings.push_back(std::move(*meaning));
            out.retrieved.push_back(true);
            continue;
        }
        const auto& guess = aligned ? own_chunks[i] : own_chunks[rng.index(own_chunks.size())];
        out.meanings.push_back(guess);
        out.retrieved.push_back(false);
    }
    return out;
}

std::vector<Phoneme> concatenate(std::span<const Form> words) {
    std::vector<Phoneme> out;
    for (const auto& w : words) {
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

std::vector<std::size_t> internal_boundaries(std::span<const Form> words) {
    std::vector<std::size_t> cuts;
    std::size_t offset = 0;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        offset += words[i].size();
        cuts.push_back(offset);
    }
    return cuts;
}

InteractionRecord run_interaction(const World& world, AgentState& speaker, AgentState& hearer,
                                  const InteractionParams& params, Rng& rng) {
    InteractionRecord record;
    record.speaker = speaker.id;
    record.hearer = hearer.id;

    auto event = std::make_shared<const EventInstance>(world.generate_event(rng));
    const auto tokens = world.linearize(*event);

    record.speaker_chunks = random_segmentation(tokens, params.boundary_prob, rng);
    auto production = produce(speaker.lexicon, record.speaker_chunks, params.inventory_size, rng);
    record.speaker_words = std::move(production.words);
    record.speaker_boundaries = internal_boundaries(record.speaker_words);

    const auto utterance = concatenate(record.speaker_words);
    record.hearer_words =
        hearer_segment(utterance, params.synchrony, record.speaker_boundaries, params.boundary_prob, rng);
    record.hearer_boundaries = internal_boundaries(record.hearer_words);
    record.hearer_chunks = random_segmentation(tokens, params.boundary_prob, rng);
    auto decoding = decode(hearer.lexicon, record.hearer_words, record.hearer_chunks, rng);
    record.hearer_meanings = std::move(decoding.meanings);

    for (const auto& [meaning, form] : production.updates) {
        speaker.lexicon.add_or_reinforce(meaning, form);
    }
    for (std::size_t i = 0; i < record.hearer_words.size(); ++i) {
        if (decoding.retrieved[i] && !params.hearer_reinforces_retrievals) {
            continue;
        }
        hearer.lexicon.add_or_reinforce(record.hearer_meanings[i], record.hearer_words[i]);
    }

    speaker.knowledge_base.push_back(event);
    if (&hearer != &speaker) {
        hearer.knowledge_base.push_back(event);
    }
    record.event = std::move(event);
    return record;
}

}  // namespace lew
