#include "lew/core_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace lew {

namespace {

constexpr std::string_view kOnsets = "ptkbdgmnsfvzhlrwjcxq";
constexpr std::string_view kNuclei = "aeiouy";
static_assert(kOnsets.size() * kNuclei.size() == PhonemeInventory::max_size);


template <class Index, class Key>
const std::vector<std::uint32_t>* candidates(const Index& index, const Key& key) {
    const auto it = index.find(key);
    return it == index.end() ? nullptr : &it->second;
}

// Index of the heaviest mapping among `ids`, uniform among exact ties.
std::uint32_t heaviest(std::span<const Mapping> mappings, const std::vector<std::uint32_t>& ids, Rng& rng) {
    double best = -1.0;
    std::size_t ties = 0;
    std::uint32_t pick = ids.front();
    for (const auto id : ids) {
        const double w = mappings[id].weight;
        if (w > best) {
            best = w;
            ties = 1;
            pick = id;
        } else if (w == best) {
            ++ties;
        }
    }
    if (ties == 1) {
        return pick;
    }
    std::size_t chosen = rng.index(ties);
    for (const auto id : ids) {
        if (mappings[id].weight == best && chosen-- == 0) {
            return id;
        }
    }
    return pick;
}

}  // namespace

PhonemeInventory::PhonemeInventory(std::size_t size) : size_(size) {
    if (size == 0 || size > max_size) {
        throw std::invalid_argument("phoneme inventory size must be in [1, " + std::to_string(max_size) + "]");
    }
}

std::string PhonemeInventory::render(Phoneme p) const {
    if (p.id >= size_) {
        throw std::out_of_range("phoneme id outside inventory");
    }
    return {kOnsets[p.id / kNuclei.size()], kNuclei[p.id % kNuclei.size()]};
}

std::optional<Phoneme> PhonemeInventory::parse(std::string_view text) const {
    if (text.size() != 2) {
        return std::nullopt;
    }
    const auto onset = kOnsets.find(text[0]);
    const auto nucleus = kNuclei.find(text[1]);
    if (onset == std::string_view::npos || nucleus == std::string_view::npos) {
        return std::nullopt;
    }
    const auto id = onset * kNuclei.size() + nucleus;
    if (id >= size_) {
        return std::nullopt;
    }
    return Phoneme{static_cast<std::uint16_t>(id)};
}

std::optional<std::uint32_t> Lexicon::find(const Meaning& meaning, const Form& form) const {
    if (const auto* ids = candidates(by_meaning_, meaning)) {
        for (const auto id : *ids) {
            if (mappings_[id].form == form) {
                return id;
            }
        }
    }
    return std::nullopt;
}

void Lexicon::add_or_reinforce(const Meaning& meaning, const Form& form) {
    if (const auto id = find(meaning, form)) {
        mappings_[*id].weight += 1.0;
        return;
    }
    const auto id = static_cast<std::uint32_t>(mappings_.size());
    mappings_.push_back(Mapping{meaning, form, 1.0});
    by_meaning_[meaning].push_back(id);
    by_form_[form].push_back(id);
}

std::optional<Form> Lexicon::retrieve_form(const Meaning& meaning, Rng& rng) const {
    const auto* ids = candidates(by_meaning_, meaning);
    if (ids == nullptr) {
        return std::nullopt;
    }
    return mappings_[heaviest(mappings_, *ids, rng)].form;
}

std::optional<Meaning> Lexicon::retrieve_meaning(const Form& form, Rng& rng) const {
    const auto* ids = candidates(by_form_, form);
    if (ids == nullptr) {
        return std::nullopt;
    }
    return mappings_[heaviest(mappings_, *ids, rng)].meaning;
}

void Lexicon::decay_all(double factor, double threshold) {
    for (auto& m : mappings_) {
        m.weight *= factor;
    }
    const auto kept = std::remove_if(mappings_.begin(), mappings_.end(),
                                     [threshold](const Mapping& m) { return m.weight < threshold; });
    if (kept != mappings_.end()) {
        mappings_.erase(kept, mappings_.end());
        reindex();
    }
}

std::optional<double> Lexicon::weight(const Meaning& meaning, const Form& form) const {
    if (const auto id = find(meaning, form)) {
        return mappings_[*id].weight;
    }
    return std::nullopt;
}

void Lexicon::reindex() {
    by_meaning_.clear();
    by_form_.clear();
    for (std::uint32_t id = 0; id < mappings_.size(); ++id) {
        by_meaning_[mappings_[id].meaning].push_back(id);
        by_form_[mappings_[id].form].push_back(id);
    }
}

LexiconMetrics lexicon_metrics(const Lexicon& lexicon) {
    if (lexicon.empty()) {
        return {};
    }
    // Pairs are unique, so the mapping count is both the sum over meanings of
    // their form counts and the sum over forms of their meaning counts.
    const auto n = static_cast<double>(lexicon.size());
    return {lexicon.size(), n / static_cast<double>(lexicon.distinct_meanings()),
            n / static_cast<double>(lexicon.distinct_forms())};
}

}  // namespace lew
