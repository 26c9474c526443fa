#include "lew/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "lew/error.hpp"

namespace lew {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = value.find(',');
        items.push_back(trim(value.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        value.remove_prefix(comma + 1);
    }
    return items;
}

double parse_plain_real(std::string_view key, std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

double parse_real(std::string_view key, std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return parse_plain_real(key, text);
    }
    const double num = parse_plain_real(key, trim(text.substr(0, slash)));
    const double den = parse_plain_real(key, trim(text.substr(slash + 1)));
    if (den == 0.0) {
        throw ConfigError(std::string(key), "zero denominator");
    }
    return num / den;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::size_t parse_size(std::string_view key, std::string_view text) {
    return static_cast<std::size_t>(parse_u64(key, text));
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
    if (text == "false" || text == "no" || text == "off" || text == "0") return false;
    throw ConfigError(std::string(key), "expected true/false, got '" + std::string(text) + "'");
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

struct KeyDef {
    ConfigKey doc;
    Setter set;
};

template <class T>
Setter size_field(T ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.*field = parse_size(k, v); };
}
Setter real_field(double ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.*field = parse_real(k, v); };
}
Setter bool_field(bool ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, std::string_view k, std::string_view v) { c.*field = parse_bool(k, v); };
}

const std::vector<KeyDef>& key_table() {
    static const std::vector<KeyDef> table = {
        {{"total_agents", "9", "agents including the male"}, size_field(&ExperimentConfig::total_agents)},
        {{"male_present", "false", "add one hub agent outside all groups"}, bool_field(&ExperimentConfig::male_present)},
        {{"n_groups", "3", "number of non-male groups"}, size_field(&ExperimentConfig::n_groups)},
        {{"ratios", "equal", "comma-separated group shares summing to 1"},
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.ratios.clear();
             if (v == "equal") return;
             for (const auto item : split_list(v)) c.ratios.push_back(parse_real(k, item));
         }},
        {{"p_male", "0.2 with male, else 0", "probability a non-male speaker addresses the male"},
         real_field(&ExperimentConfig::p_male)},
        {{"p_intra", "1/3", "own-group probability given the male was not chosen"},
         real_field(&ExperimentConfig::p_intra)},
        {{"event_types", "100", "number of Zipf-ranked event types"}, size_field(&ExperimentConfig::event_types)},
        {{"zipf_s", "1.0", "Zipf exponent over event-type ranks"}, real_field(&ExperimentConfig::zipf_s)},
        {{"phonemes", "41", "phoneme inventory size (max 120)"}, size_field(&ExperimentConfig::phonemes)},
        {{"animates", "10", "animate entity count"}, size_field(&ExperimentConfig::animates)},
        {{"inanimates", "10", "inanimate entity count"}, size_field(&ExperimentConfig::inanimates)},
        {{"max_depth", "2", "maximum event nesting depth"},
         size_field(&ExperimentConfig::max_depth)},
        {{"max_arity", "3", "largest event-type arity"}, size_field(&ExperimentConfig::max_arity)},
        {{"min_base_fraction", "0.2", "minimum share of event types without event arguments"},
         real_field(&ExperimentConfig::min_base_fraction)},
        {{"boundary_prob", "0.5", "cut probability for individuation and hearer segmentation"},
         real_field(&ExperimentConfig::boundary_prob)},
        {{"synchrony", "false", "hearer reproduces the speaker's word boundaries"},
         bool_field(&ExperimentConfig::synchrony)},
        {{"hearer_reinforce_retrievals", "true", "hearer reinforces mappings it retrieved"},
         bool_field(&ExperimentConfig::hearer_reinforce_retrievals)},
        {{"decay", "0.95", "per-round weight multiplier in (0, 1]"}, real_field(&ExperimentConfig::decay)},
        {{"prune", "0.1", "mappings below this weight are forgotten"}, real_field(&ExperimentConfig::prune)},
        {{"rounds", "200", "rounds per run"}, size_field(&ExperimentConfig::rounds)},
        {{"interactions_per_round", "10", "bouts per round"}, size_field(&ExperimentConfig::interactions_per_round)},
        {{"runs", "600", "runs per condition (sweep)"}, size_field(&ExperimentConfig::runs)},
        {{"master_seed", "1", "seed from which all run seeds derive"},
         [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.master_seed = parse_u64(k, v); }},
        {{"record_every", "1", "emit a metrics row every N rounds"}, size_field(&ExperimentConfig::record_every)},
        {{"grid_male_present", "(none)", "sweep: male settings, e.g. false,true"},
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.grid_male_present.clear();
             for (const auto item : split_list(v)) c.grid_male_present.push_back(parse_bool(k, item));
         }},
        {{"grid_p_intra", "(none)", "sweep: p_intra levels, e.g. 0,1/3,0.5,0.8,1"},
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.grid_p_intra.clear();
             for (const auto item : split_list(v)) c.grid_p_intra.push_back(parse_real(k, item));
         }},
        {{"grid_p_male", "0.2", "sweep: p_male used in male-present cells"}, real_field(&ExperimentConfig::grid_p_male)},
    };
    return table;
}

void require_probability(double value, const char* key) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ConfigError(key, "must be in [0, 1], got " + std::to_string(value));
    }
}

void require_positive(std::size_t value, const char* key) {
    if (value == 0) {
        throw ConfigError(key, "must be positive");
    }
}

}  // namespace

std::vector<double> ExperimentConfig::effective_ratios() const {
    if (!ratios.empty()) {
        return ratios;
    }
    return std::vector<double>(n_groups, n_groups == 0 ? 0.0 : 1.0 / static_cast<double>(n_groups));
}

WorldConfig ExperimentConfig::world() const {
    return {animates, inanimates, event_types, max_arity, zipf_s, max_depth, min_base_fraction};
}

InteractionParams ExperimentConfig::interaction() const {
    return {phonemes, boundary_prob, synchrony, hearer_reinforce_retrievals};
}

SelectionParams ExperimentConfig::selection() const { return {p_male, p_intra}; }

std::span<const ConfigKey> config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> out;
        for (const auto& def : key_table()) out.push_back(def.doc);
        return out;
    }();
    return keys;
}

ExperimentConfig load_config(std::string_view text) {
    ExperimentConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError(line_no, "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw FormatError(line_no, "expected 'key = value'");
        }
        const auto& table = key_table();
        const auto def = std::find_if(table.begin(), table.end(), [&](const KeyDef& d) { return d.doc.name == key; });
        if (def == table.end()) {
            throw ConfigError(std::string(key), "unknown key (line " + std::to_string(line_no) + ")");
        }
        if (!seen.emplace(key).second) {
            throw ConfigError(std::string(key), "duplicate key (line " + std::to_string(line_no) + ")");
        }
        def->set(config, key, value);
    }
    if (!seen.contains("p_male")) {
        config.p_male = config.male_present ? 0.2 : 0.0;
    }
    validate(config);
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str());
}

void validate(const ExperimentConfig& c) {
    require_positive(c.total_agents, "total_agents");
    require_positive(c.n_groups, "n_groups");
    if (!c.ratios.empty() && c.ratios.size() != c.n_groups) {
        throw ConfigError("ratios", "expected " + std::to_string(c.n_groups) + " shares");
    }
    require_probability(c.p_male, "p_male");
    require_probability(c.p_intra, "p_intra");
    if (!c.male_present && c.p_male != 0.0) {
        throw ConfigError("p_male", "a male-directed rate requires male_present = true");
    }
    require_positive(c.event_types, "event_types");
    if (!(c.zipf_s >= 0.0)) {
        throw ConfigError("zipf_s", "must be non-negative");
    }
    if (c.phonemes == 0 || c.phonemes > PhonemeInventory::max_size) {
        throw ConfigError("phonemes", "must be in [1, " + std::to_string(PhonemeInventory::max_size) + "]");
    }
    if (c.max_arity > 8) {
        throw ConfigError("max_arity", "must be at most 8");
    }
    if (c.max_depth > 8) {
        throw ConfigError("max_depth", "must be at most 8");
    }
    require_probability(c.min_base_fraction, "min_base_fraction");
    require_probability(c.boundary_prob, "boundary_prob");
    if (!(c.decay > 0.0 && c.decay <= 1.0)) {
        throw ConfigError("decay", "must be in (0, 1]");
    }
    if (!(c.prune >= 0.0)) {
        throw ConfigError("prune", "must be non-negative");
    }
    require_positive(c.interactions_per_round, "interactions_per_round");
    require_positive(c.runs, "runs");
    require_positive(c.record_every, "record_every");
    for (const double p : c.grid_p_intra) {
        require_probability(p, "grid_p_intra");
    }
    require_probability(c.grid_p_male, "grid_p_male");

    // Group sizes must come out integral.
    const auto ratios = c.effective_ratios();
    const auto population = build_population(c.total_agents, c.male_present, ratios);
    validate(c.selection(), population);
}

std::vector<ExperimentConfig> expand_grid(const ExperimentConfig& config) {
    if (config.grid_male_present.empty() && config.grid_p_intra.empty()) {
        return {config};
    }
    const std::vector<bool> males =
        config.grid_male_present.empty() ? std::vector<bool>{config.male_present} : config.grid_male_present;
    const std::vector<double> levels =
        config.grid_p_intra.empty() ? std::vector<double>{config.p_intra} : config.grid_p_intra;

    // Toggling the male keeps the group members fixed and adds him on top.
    const auto members = config.total_agents - (config.male_present ? 1 : 0);
    std::vector<ExperimentConfig> out;
    for (const bool male : males) {
        for (const double p_intra : levels) {
            auto c = config;
            c.grid_male_present.clear();
            c.grid_p_intra.clear();
            if (!config.grid_male_present.empty()) {
                c.male_present = male;
                c.total_agents = members + (male ? 1 : 0);
                c.p_male = male ? config.grid_p_male : 0.0;
            }
            c.p_intra = p_intra;
            validate(c);
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<ExperimentConfig> paper_conditions(const ExperimentConfig& base) {
    auto grid = base;
    grid.grid_male_present = {false, true};
    grid.grid_p_intra = {0.0, 1.0 / 3.0, 0.5, 0.8, 1.0};
    grid.grid_p_male = 0.2;
    return expand_grid(grid);
}

}  // namespace lew
