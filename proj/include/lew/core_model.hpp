#pragma once

// Agent-internal state: phonemes, forms, meanings and the weighted lexicon.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "lew/rng.hpp"

namespace lew {

/// Interned world symbol (predicate or entity atom). Names live in the World.
using Token = std::uint32_t;
using AgentId = std::uint32_t;

struct Phoneme {
    std::uint16_t id = 0;
    friend constexpr auto operator<=>(Phoneme, Phoneme) = default;
};

/// Fixed-size phoneme inventory. Each phoneme renders as a two-character
/// onset+nucleus string; the first `size` pairs in onset-major order are used.
class PhonemeInventory {
public:
    static constexpr std::size_t max_size = 120;  // 20 onsets x 6 nuclei

    explicit PhonemeInventory(std::size_t size = 41);

    std::size_t size() const noexcept { return size_; }
    std::string render(Phoneme p) const;
    std::optional<Phoneme> parse(std::string_view text) const;

private:
    std::size_t size_;
};

/// Non-empty symbol sequence compared by content, with its hash cached at
/// construction so lexicon indexing and population-wide unions stay cheap.
template <class T, class Tag>
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(std::vector<T> items) : items_(std::move(items)), hash_(compute_hash(items_)) {}
    Sequence(std::initializer_list<T> items) : Sequence(std::vector<T>(items)) {}

    std::span<const T> items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    std::size_t hash() const noexcept { return hash_; }
    const T& operator[](std::size_t i) const { return items_[i]; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    friend bool operator==(const Sequence& a, const Sequence& b) {
        return a.hash_ == b.hash_ && a.items_ == b.items_;
    }
    friend auto operator<=>(const Sequence& a, const Sequence& b) { return a.items_ <=> b.items_; }

    struct Hasher {
        std::size_t operator()(const Sequence& s) const noexcept { return s.hash_; }
    };

private:
    static std::size_t compute_hash(const std::vector<T>& items) noexcept {
        std::uint64_t h = Tag::salt;
        for (const auto& item : items) {
            if constexpr (std::is_same_v<T, Phoneme>) {
                h = splitmix64(h ^ item.id);
            } else {
                h = splitmix64(h ^ static_cast<std::uint64_t>(item));
            }
        }
        return static_cast<std::size_t>(h);
    }

    std::vector<T> items_;
    std::size_t hash_ = 0;
};

struct MeaningTag {
    static constexpr std::uint32_t salt = 0x6d65616e;
};
struct FormTag {
    static constexpr std::uint32_t salt = 0x666f726d;
};

/// A chunk of an event's token sequence.
using Meaning = Sequence<Token, MeaningTag>;
/// A word: an ordered, non-empty run of phonemes.
using Form = Sequence<Phoneme, FormTag>;

struct Mapping {
    Meaning meaning;
    Form form;
    double weight = 1.0;
};

struct LexiconMetrics {
    std::size_t size = 0;
    double synonymy = 0.0;
    double homonymy = 0.0;
};

/// Weighted form-meaning associations, unique by (meaning, form).
///
/// Both synonymy (several forms per meaning) and homonymy (several meanings per
/// form) are allowed. Lookups go through per-meaning and per-form indices; the
/// candidate order inside each index is insertion order, which keeps random
/// tie-breaking reproducible.
class Lexicon {
public:
    /// Weight += 1 for an existing pair, otherwise insert with weight 1.
    void add_or_reinforce(const Meaning& meaning, const Form& form);

    /// Form of the heaviest mapping for `meaning`; ties broken uniformly via `rng`.
    std::optional<Form> retrieve_form(const Meaning& meaning, Rng& rng) const;
    std::optional<Meaning> retrieve_meaning(const Form& form, Rng& rng) const;

    /// Multiply every weight by `factor`, then drop mappings below `threshold`.
    void decay_all(double factor, double threshold);

    std::optional<double> weight(const Meaning& meaning, const Form& form) const;
    bool contains(const Meaning& meaning, const Form& form) const { return weight(meaning, form).has_value(); }

    std::span<const Mapping> mappings() const noexcept { return mappings_; }
    std::size_t size() const noexcept { return mappings_.size(); }
    bool empty() const noexcept { return mappings_.empty(); }
    std::size_t distinct_meanings() const noexcept { return by_meaning_.size(); }
    std::size_t distinct_forms() const noexcept { return by_form_.size(); }

private:
    std::optional<std::uint32_t> find(const Meaning& meaning, const Form& form) const;
    void reindex();

    std::vector<Mapping> mappings_;
    std::unordered_map<Meaning, std::vector<std::uint32_t>, Meaning::Hasher> by_meaning_;
    std::unordered_map<Form, std::vector<std::uint32_t>, Form::Hasher> by_form_;
};

/// Size plus mean forms-per-meaning and meanings-per-form; (0, 0, 0) when empty.
LexiconMetrics lexicon_metrics(const Lexicon& lexicon);

struct EventInstance;

struct AgentState {
    AgentId id = 0;
    Lexicon lexicon;
    /// Experienced events, in encounter order.
    std::vector<std::shared_ptr<const EventInstance>> knowledge_base;
};

}  // namespace lew
