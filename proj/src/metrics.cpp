#include "lew/metrics.hpp"

#include <algorithm>

namespace lew {

namespace {

struct Span {
    std::size_t begin;
    std::size_t end;
};

std::vector<Span> spans_of(std::span<const Form> words) {
    std::vector<Span> out;
    out.reserve(words.size());
    std::size_t offset = 0;
    for (const auto& w : words) {
        out.push_back({offset, offset + w.size()});
        offset += w.size();
    }
    return out;
}

// Hash-first total order; content breaks hash ties so equal sequences are adjacent.
template <class Seq>
int compare(const Seq& a, const Seq& b) {
    if (a.hash() != b.hash()) {
        return a.hash() < b.hash() ? -1 : 1;
    }
    const auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::size_t multiset_overlap(std::span<const Meaning> a, std::span<const Meaning> b) {
    std::vector<const Meaning*> x;
    std::vector<const Meaning*> y;
    for (const auto& m : a) x.push_back(&m);
    for (const auto& m : b) y.push_back(&m);
    const auto less = [](const Meaning* l, const Meaning* r) { return compare(*l, *r) < 0; };
    std::sort(x.begin(), x.end(), less);
    std::sort(y.begin(), y.end(), less);
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t matches = 0;
    while (i < x.size() && j < y.size()) {
        const int c = compare(*x[i], *y[j]);
        if (c == 0) {
            ++matches;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    return matches;
}

}  // namespace

InteractionScore score_interaction(const InteractionRecord& record) {
    InteractionScore score;
    const auto speaker_spans = spans_of(record.speaker_words);
    const auto hearer_spans = spans_of(record.hearer_words);

    // Both span lists are sorted and non-overlapping, so a merge walk finds
    // every exact match.
    std::size_t segmented = 0;
    std::size_t understood = 0;
    for (std::size_t i = 0, j = 0; i < speaker_spans.size() && j < hearer_spans.size();) {
        const auto& s = speaker_spans[i];
        const auto& h = hearer_spans[j];
        if (s.begin == h.begin && s.end == h.end) {
            ++segmented;
            if (record.hearer_meanings[j] == record.speaker_chunks[i]) {
                ++understood;
            }
            ++i;
            ++j;
        } else if (s.begin < h.begin || (s.begin == h.begin && s.end < h.end)) {
            ++i;
        } else {
            ++j;
        }
    }
    if (!speaker_spans.empty()) {
        score.seg_correct_rate = static_cast<double>(segmented) / static_cast<double>(speaker_spans.size());
        score.explicit_rate = static_cast<double>(understood) / static_cast<double>(speaker_spans.size());
    }

    const auto matches = static_cast<double>(multiset_overlap(record.speaker_chunks, record.hearer_meanings));
    if (!record.hearer_meanings.empty()) {
        score.implicit_precision = matches / static_cast<double>(record.hearer_meanings.size());
    }
    if (!record.speaker_chunks.empty()) {
        score.implicit_recall = matches / static_cast<double>(record.speaker_chunks.size());
    }
    const double denom = score.implicit_precision + score.implicit_recall;
    if (denom > 0.0) {
        score.implicit_f1 = 2.0 * score.implicit_precision * score.implicit_recall / denom;
    }
    return score;
}

PopulationSnapshot population_metrics(std::span<const AgentState> agents, const Population& population) {
    PopulationSnapshot snap;
    snap.agents.reserve(agents.size());

    std::size_t members = 0;
    std::vector<const Mapping*> entries;
    for (const auto& agent : agents) {
        const auto m = lexicon_metrics(agent.lexicon);
        snap.agents.push_back(m);
        if (population.is_male(agent.id)) {
            snap.male_lexicon_size = m.size;
        } else {
            ++members;
            snap.mean_lexicon_size += static_cast<double>(m.size);
            snap.mean_synonymy += m.synonymy;
            snap.mean_homonymy += m.homonymy;
        }
        for (const auto& mapping : agent.lexicon.mappings()) {
            entries.push_back(&mapping);
        }
    }
    if (members > 0) {
        snap.mean_lexicon_size /= static_cast<double>(members);
        snap.mean_synonymy /= static_cast<double>(members);
        snap.mean_homonymy /= static_cast<double>(members);
    }
    if (entries.empty()) {
        return snap;
    }

    std::sort(entries.begin(), entries.end(), [](const Mapping* a, const Mapping* b) {
        const int c = compare(a->meaning, b->meaning);
        return c != 0 ? c < 0 : compare(a->form, b->form) < 0;
    });

    // Pairs are unique within a lexicon, so a run of equal pairs has one entry per holder.
    std::vector<const Mapping*> unique_pairs;
    std::size_t distinct_meanings = 0;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j]->meaning == entries[i]->meaning &&
               entries[j]->form == entries[i]->form) {
            ++j;
        }
        if (unique_pairs.empty() || !(unique_pairs.back()->meaning == entries[i]->meaning)) {
            ++distinct_meanings;
        }
        unique_pairs.push_back(entries[i]);
        if (j - i == agents.size()) {
            ++snap.shared_mappings;
        }
        i = j;
    }

    std::vector<const Form*> forms;
    forms.reserve(unique_pairs.size());
    for (const auto* m : unique_pairs) {
        forms.push_back(&m->form);
    }
    std::sort(forms.begin(), forms.end(), [](const Form* a, const Form* b) { return compare(*a, *b) < 0; });
    const auto distinct_forms = static_cast<std::size_t>(
        std::unique(forms.begin(), forms.end(), [](const Form* a, const Form* b) { return *a == *b; }) -
        forms.begin());

    const auto pairs = static_cast<double>(unique_pairs.size());
    snap.global_size = unique_pairs.size();
    snap.global_synonymy = pairs / static_cast<double>(distinct_meanings);
    snap.global_homonymy = pairs / static_cast<double>(distinct_forms);
    snap.mean_agents_per_mapping = static_cast<double>(entries.size()) / pairs;
    return snap;
}

}  // namespace lew
