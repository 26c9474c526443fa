#include "lew/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>

#include "lew/error.hpp"
#include "lew/results_io.hpp"

namespace lew {

namespace {

constexpr std::array<Metric, kMetricCount> kMetrics = {
    Metric::f1_implicit,         Metric::implicit_precision,      Metric::implicit_recall,
    Metric::explicit_rate,       Metric::seg_correct_rate,        Metric::mean_agent_lexicon_size,
    Metric::male_lexicon_size,   Metric::mean_agent_synonymy,     Metric::mean_agent_homonymy,
    Metric::global_synonymy,     Metric::global_homonymy,         Metric::shared_mappings,
    Metric::mean_agents_per_mapping,
};

constexpr std::array<Figure, 6> kFigures = {{
    {"fig1a", Metric::f1_implicit, "Communicative success (implicit F1)"},
    {"fig1b", Metric::mean_agent_lexicon_size, "Agent lexicon size"},
    {"fig2a", Metric::mean_agent_synonymy, "Agent synonymy"},
    {"fig2b", Metric::mean_agent_homonymy, "Agent homonymy"},
    {"fig3a", Metric::global_synonymy, "Global synonymy"},
    {"fig3b", Metric::global_homonymy, "Global homonymy"},
}};

constexpr double kSameLevel = 1e-9;

std::size_t idx(Metric m) { return static_cast<std::size_t>(m); }

std::string num(double v) {
    if (!std::isfinite(v)) {
        return {};
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pvalue(double p) {
    char buf[64];
    if (p < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.2e", p);
    } else {
        std::snprintf(buf, sizeof buf, "%.4f", p);
    }
    return buf;
}

std::string percent(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f%%", p * 100.0);
    return buf;
}

std::string describe(const ConditionSummary& c) {
    return std::string(c.male_present ? "male" : "no male") + ", p_intra " + percent(c.p_intra);
}

std::string describe_test(const WelchResult& w) {
    if (!w.ok()) {
        return std::string(to_string(w.status));
    }
    return "t = " + fixed(w.t, 3) + ", df = " + fixed(w.df, 1) + ", p = " + pvalue(w.p);
}

}  // namespace

std::string_view metric_name(Metric metric) {
    switch (metric) {
        case Metric::f1_implicit: return "f1_implicit";
        case Metric::implicit_precision: return "implicit_precision";
        case Metric::implicit_recall: return "implicit_recall";
        case Metric::explicit_rate: return "explicit_rate";
        case Metric::seg_correct_rate: return "seg_correct_rate";
        case Metric::mean_agent_lexicon_size: return "mean_agent_lexicon_size";
        case Metric::male_lexicon_size: return "male_lexicon_size";
        case Metric::mean_agent_synonymy: return "mean_agent_synonymy";
        case Metric::mean_agent_homonymy: return "mean_agent_homonymy";
        case Metric::global_synonymy: return "global_synonymy";
        case Metric::global_homonymy: return "global_homonymy";
        case Metric::shared_mappings: return "shared_mappings";
        case Metric::mean_agents_per_mapping: return "mean_agents_per_mapping";
    }
    return "?";
}

std::span<const Metric> all_metrics() { return kMetrics; }

double metric_value(const RoundRow& row, Metric metric) {
    switch (metric) {
        case Metric::f1_implicit: return row.f1_implicit;
        case Metric::implicit_precision: return row.implicit_precision;
        case Metric::implicit_recall: return row.implicit_recall;
        case Metric::explicit_rate: return row.explicit_rate;
        case Metric::seg_correct_rate: return row.seg_correct_rate;
        case Metric::mean_agent_lexicon_size: return row.mean_agent_lexicon_size;
        case Metric::male_lexicon_size:
            return row.male_lexicon_size ? static_cast<double>(*row.male_lexicon_size)
                                         : std::numeric_limits<double>::quiet_NaN();
        case Metric::mean_agent_synonymy: return row.mean_agent_synonymy;
        case Metric::mean_agent_homonymy: return row.mean_agent_homonymy;
        case Metric::global_synonymy: return row.global_synonymy;
        case Metric::global_homonymy: return row.global_homonymy;
        case Metric::shared_mappings: return static_cast<double>(row.shared_mappings);
        case Metric::mean_agents_per_mapping: return row.mean_agents_per_mapping;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string_view to_string(ComparisonKind kind) {
    switch (kind) {
        case ComparisonKind::vs_baseline: return "vs_baseline";
        case ComparisonKind::adjacent: return "adjacent";
        case ComparisonKind::male_vs_members: return "male_vs_members";
    }
    return "?";
}

double final_window(const RunResult& run, Metric metric, std::size_t window) {
    if (run.rows.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const std::size_t n = std::min(std::max<std::size_t>(window, 1), run.rows.size());
    double sum = 0.0;
    for (std::size_t i = run.rows.size() - n; i < run.rows.size(); ++i) {
        sum += metric_value(run.rows[i], metric);
    }
    return sum / static_cast<double>(n);
}

const ConditionSummary& Analysis::condition(std::size_t id) const {
    for (const auto& c : conditions) {
        if (c.condition_id == id) {
            return c;
        }
    }
    throw AnalysisError("no condition " + std::to_string(id));
}

const ConditionSummary* Analysis::find(bool male_present, double p_intra) const {
    for (const auto& c : conditions) {
        if (c.male_present == male_present && std::abs(c.p_intra - p_intra) < kSameLevel) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<const ConditionSummary*> Analysis::series(bool male_present) const {
    std::vector<const ConditionSummary*> out;
    for (const auto& c : conditions) {
        if (c.male_present == male_present) {
            out.push_back(&c);
        }
    }
    return out;
}

const Comparison* Analysis::find_comparison(ComparisonKind kind, Metric metric, std::optional<std::size_t> condition,
                                            std::optional<std::size_t> reference) const {
    for (const auto& c : comparisons) {
        if (c.kind == kind && c.metric == metric && c.condition == condition &&
            (!reference || c.reference == reference)) {
            return &c;
        }
    }
    return nullptr;
}

Analysis analyze(std::span<const RunResult> results, const AnalysisOptions& options) {
    if (results.empty()) {
        throw AnalysisError("no results to analyze");
    }
    Analysis out;
    out.window = std::max<std::size_t>(options.window, 1);

    std::map<std::size_t, std::vector<const RunResult*>> by_condition;
    for (const auto& run : results) {
        if (run.rows.empty()) {
            throw AnalysisError("run " + std::to_string(run.run_id) + " of condition " +
                                std::to_string(run.condition_id) + " has no recorded rounds");
        }
        auto& runs = by_condition[run.condition_id];
        if (!runs.empty() && (runs.front()->male_present != run.male_present || runs.front()->p_intra != run.p_intra)) {
            throw AnalysisError("condition " + std::to_string(run.condition_id) + " mixes different settings");
        }
        runs.push_back(&run);
    }

    for (const auto& [id, runs] : by_condition) {
        if (runs.size() < 2) {
            throw AnalysisError("condition " + std::to_string(id) + " has fewer than 2 runs");
        }
        ConditionSummary s;
        s.condition_id = id;
        s.male_present = runs.front()->male_present;
        s.p_intra = runs.front()->p_intra;
        s.runs = runs.size();
        for (const auto m : kMetrics) {
            if (m == Metric::male_lexicon_size && !s.male_present) {
                continue;
            }
            auto& values = s.values[idx(m)];
            for (const auto* run : runs) {
                values.push_back(final_window(*run, m, out.window));
            }
            s.stats[idx(m)] = summarize(values);
        }
        out.conditions.push_back(std::move(s));
    }
    std::stable_sort(out.conditions.begin(), out.conditions.end(), [](const auto& a, const auto& b) {
        if (a.male_present != b.male_present) return !a.male_present;
        return a.p_intra < b.p_intra;
    });

    const ConditionSummary* baseline = nullptr;
    if (options.baseline) {
        for (const auto& c : out.conditions) {
            if (c.condition_id == *options.baseline) baseline = &c;
        }
        if (baseline == nullptr) {
            throw AnalysisError("baseline condition " + std::to_string(*options.baseline) + " not in results");
        }
    } else {
        baseline = out.find(false, 1.0 / 3.0);
        if (baseline == nullptr) {
            throw AnalysisError("no baseline condition (no male, p_intra = 1/3) in results; pass one explicitly");
        }
    }
    out.baseline = baseline->condition_id;

    auto compare = [&](ComparisonKind kind, Metric m, std::optional<std::size_t> cond, std::optional<std::size_t> ref,
                       std::span<const double> first, std::span<const double> second) {
        Comparison c;
        c.kind = kind;
        c.metric = m;
        c.condition = cond;
        c.reference = ref;
        c.mean_first = summarize(first).mean;
        c.mean_second = summarize(second).mean;
        c.test = welch_t_test(first, second);
        out.comparisons.push_back(c);
    };

    for (const auto m : kMetrics) {
        if (m == Metric::male_lexicon_size && !baseline->male_present) {
            continue;
        }
        for (const auto& c : out.conditions) {
            if (c.condition_id == baseline->condition_id || c.of(m).empty()) {
                continue;
            }
            compare(ComparisonKind::vs_baseline, m, c.condition_id, baseline->condition_id, c.of(m), baseline->of(m));
        }
    }
    for (const bool male : {false, true}) {
        const auto levels = out.series(male);
        for (const auto m : kMetrics) {
            if (m == Metric::male_lexicon_size && !male) {
                continue;
            }
            for (std::size_t i = 1; i < levels.size(); ++i) {
                compare(ComparisonKind::adjacent, m, levels[i]->condition_id, levels[i - 1]->condition_id,
                        levels[i]->of(m), levels[i - 1]->of(m));
            }
        }
    }
    std::vector<double> pooled_male;
    std::vector<double> pooled_members;
    for (const auto& c : out.conditions) {
        if (!c.male_present) {
            continue;
        }
        const auto& male = c.of(Metric::male_lexicon_size);
        const auto& members = c.of(Metric::mean_agent_lexicon_size);
        compare(ComparisonKind::male_vs_members, Metric::male_lexicon_size, c.condition_id, std::nullopt, male,
                members);
        pooled_male.insert(pooled_male.end(), male.begin(), male.end());
        pooled_members.insert(pooled_members.end(), members.begin(), members.end());
    }
    if (!pooled_male.empty()) {
        compare(ComparisonKind::male_vs_members, Metric::male_lexicon_size, std::nullopt, std::nullopt, pooled_male,
                pooled_members);
    }
    return out;
}

Trend trend(const Analysis& analysis, Metric metric, bool male_present) {
    Trend t;
    t.male_present = male_present;
    const auto levels = analysis.series(male_present);
    for (const auto* c : levels) {
        t.p_intra.push_back(c->p_intra);
        t.means.push_back(c->stat(metric).mean);
    }
    if (t.means.size() >= 2) {
        t.strictly_increasing = std::adjacent_find(t.means.begin(), t.means.end(), std::greater_equal<>()) ==
                                t.means.end();
        t.strictly_decreasing = std::adjacent_find(t.means.begin(), t.means.end(), std::less_equal<>()) ==
                                t.means.end();
        t.endpoints = welch_t_test(levels.back()->of(metric), levels.front()->of(metric));
    }
    return t;
}

std::span<const Figure> figures() { return kFigures; }

std::string summary_csv(const Analysis& analysis) {
    std::string out = "condition_id,male_present,p_intra,runs";
    for (const auto m : kMetrics) {
        const std::string name(metric_name(m));
        for (const auto* suffix : {"_mean", "_sd", "_t", "_df", "_p"}) {
            out += ',' + name + suffix;
        }
    }
    out += '\n';
    for (const auto& c : analysis.conditions) {
        out += std::to_string(c.condition_id) + (c.male_present ? ",1," : ",0,") + num(c.p_intra) + ',' +
               std::to_string(c.runs);
        for (const auto m : kMetrics) {
            if (c.of(m).empty()) {
                out += ",,,,,";
                continue;
            }
            out += ',' + num(c.stat(m).mean) + ',' + num(c.stat(m).sd);
            const auto* cmp = analysis.find_comparison(ComparisonKind::vs_baseline, m, c.condition_id);
            if (cmp != nullptr && cmp->test.ok()) {
                out += ',' + num(cmp->test.t) + ',' + num(cmp->test.df) + ',' + num(cmp->test.p);
            } else {
                out += ",,,";
            }
        }
        out += '\n';
    }
    return out;
}

std::string comparisons_csv(const Analysis& analysis) {
    std::string out = "kind,metric,condition_id,reference_id,mean_first,mean_second,status,t,df,p\n";
    auto id = [](std::optional<std::size_t> v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& c : analysis.comparisons) {
        out += std::string(to_string(c.kind)) + ',' + std::string(metric_name(c.metric)) + ',' + id(c.condition) +
               ',' + id(c.reference) + ',' + num(c.mean_first) + ',' + num(c.mean_second) + ',' +
               std::string(to_string(c.test.status));
        if (c.test.ok()) {
            out += ',' + num(c.test.t) + ',' + num(c.test.df) + ',' + num(c.test.p) + '\n';
        } else {
            out += ",,,\n";
        }
    }
    return out;
}

std::string report_text(const Analysis& analysis) {
    std::string out;
    const auto& base = analysis.condition(analysis.baseline);
    out += "Final window: mean of the last " + std::to_string(analysis.window) + " recorded rounds per run.\n";
    out += "Baseline: condition " + std::to_string(base.condition_id) + " (" + describe(base) + ").\n\n";

    out += "Conditions\n";
    for (const auto& c : analysis.conditions) {
        out += "  [" + std::to_string(c.condition_id) + "] " + describe(c) + ", " + std::to_string(c.runs) +
               " runs: F1 " + fixed(c.stat(Metric::f1_implicit).mean) + " (sd " +
               fixed(c.stat(Metric::f1_implicit).sd) + "), explicit " + fixed(c.stat(Metric::explicit_rate).mean) +
               ", lexicon " +
               fixed(c.stat(Metric::mean_agent_lexicon_size).mean, 2);
        if (c.male_present) {
            out += ", male lexicon " + fixed(c.stat(Metric::male_lexicon_size).mean, 2);
        }
        out += '\n';
    }

    for (const auto& fig : kFigures) {
        out += '\n' + std::string(fig.title) + " (" + std::string(metric_name(fig.metric)) + ")\n";
        for (const bool male : {false, true}) {
            const auto t = trend(analysis, fig.metric, male);
            if (t.means.empty()) {
                continue;
            }
            out += std::string("  ") + (male ? "male:    " : "no male: ");
            for (std::size_t i = 0; i < t.means.size(); ++i) {
                out += (i ? "  " : "") + percent(t.p_intra[i]) + " " + fixed(t.means[i]);
            }
            out += '\n';
            if (t.means.size() >= 2) {
                const char* shape = t.strictly_increasing   ? "strictly increasing"
                                    : t.strictly_decreasing ? "strictly decreasing"
                                                            : "not monotone";
                out += std::string("    trend over p_intra: ") + shape + "; highest vs lowest level: " +
                       describe_test(*t.endpoints) + '\n';
            }
            const auto levels = analysis.series(male);
            for (std::size_t i = 1; i < levels.size(); ++i) {
                const auto* cmp = analysis.find_comparison(ComparisonKind::adjacent, fig.metric,
                                                           levels[i]->condition_id, levels[i - 1]->condition_id);
                out += "    " + percent(levels[i - 1]->p_intra) + " -> " + percent(levels[i]->p_intra) + ": " +
                       describe_test(cmp->test) + (cmp->test.ok() && cmp->test.p > 0.05 ? "  (not significant)" : "") +
                       '\n';
            }
        }
    }

    out += "\nAgainst baseline\n";
    for (const auto& c : analysis.conditions) {
        if (c.condition_id == analysis.baseline) {
            continue;
        }
        out += "  [" + std::to_string(c.condition_id) + "] " + describe(c) + '\n';
        for (const auto m : {Metric::f1_implicit, Metric::explicit_rate, Metric::mean_agent_lexicon_size, Metric::mean_agent_synonymy,
                             Metric::mean_agent_homonymy, Metric::global_synonymy, Metric::global_homonymy}) {
            const auto* cmp = analysis.find_comparison(ComparisonKind::vs_baseline, m, c.condition_id);
            out += "    " + std::string(metric_name(m)) + ": " + fixed(cmp->mean_first) + " vs " +
                   fixed(cmp->mean_second) + ", " + describe_test(cmp->test) + '\n';
        }
    }

    bool any_male = false;
    for (const auto& c : analysis.comparisons) {
        if (c.kind != ComparisonKind::male_vs_members) {
            continue;
        }
        if (!any_male) {
            out += "\nMale lexicon vs mean member lexicon\n";
            any_male = true;
        }
        out += std::string("  ") +
               (c.condition ? describe(analysis.condition(*c.condition)) : std::string("all male conditions")) +
               ": " + fixed(c.mean_first, 2) + " vs " + fixed(c.mean_second, 2) + ", " + describe_test(c.test) + '\n';
    }
    return out;
}

std::string figure_csv(const Analysis& analysis, const Figure& figure) {
    std::string out = "p_intra,male_present,mean,sd,runs\n";
    for (const bool male : {false, true}) {
        for (const auto* c : analysis.series(male)) {
            out += num(c->p_intra) + (male ? ",1," : ",0,") + num(c->stat(figure.metric).mean) + ',' +
                   num(c->stat(figure.metric).sd) + ',' + std::to_string(c->runs) + '\n';
        }
    }
    return out;
}

std::string figure_svg(const Analysis& analysis, const Figure& figure) {
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : analysis.conditions) {
        const auto& s = c.stat(figure.metric);
        lo = std::min(lo, s.mean - s.sd);
        hi = std::max(hi, s.mean + s.sd);
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto x = [&](double p) { return left + p * plot_w; };
    auto y = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };
    auto f = [](double v) { return fixed(v, 1); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" viewBox=\"0 0 640 420\" "
                      "font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    out += "<text x=\"" + f(left + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
           std::string(figure.title) + "</text>\n";
    out += "<line x1=\"" + f(left) + "\" y1=\"" + f(top + plot_h) + "\" x2=\"" + f(left + plot_w) + "\" y2=\"" +
           f(top + plot_h) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + f(left) + "\" y1=\"" + f(top) + "\" x2=\"" + f(left) + "\" y2=\"" + f(top + plot_h) +
           "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = lo + (hi - lo) * i / 4.0;
        out += "<line x1=\"" + f(left - 4) + "\" y1=\"" + f(y(v)) + "\" x2=\"" + f(left) + "\" y2=\"" + f(y(v)) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + f(left - 8) + "\" y=\"" + f(y(v) + 4) + "\" text-anchor=\"end\">" + fixed(v, 3) +
               "</text>\n";
    }
    std::vector<double> ticks;
    for (const auto& c : analysis.conditions) {
        if (std::none_of(ticks.begin(), ticks.end(), [&](double t) { return std::abs(t - c.p_intra) < kSameLevel; })) {
            ticks.push_back(c.p_intra);
        }
    }
    for (const double p : ticks) {
        out += "<line x1=\"" + f(x(p)) + "\" y1=\"" + f(top + plot_h) + "\" x2=\"" + f(x(p)) + "\" y2=\"" +
               f(top + plot_h + 4) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + f(x(p)) + "\" y=\"" + f(top + plot_h + 18) + "\" text-anchor=\"middle\">" + percent(p) +
               "</text>\n";
    }
    out += "<text x=\"" + f(left + plot_w / 2) + "\" y=\"" + f(height - 16) +
           "\" text-anchor=\"middle\">intra-group communication rate</text>\n";
    out += "<text x=\"18\" y=\"" + f(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           f(top + plot_h / 2) + ")\">" + std::string(metric_name(figure.metric)) + "</text>\n";

    const std::array<std::pair<bool, const char*>, 2> series = {{{false, "#1f77b4"}, {true, "#d62728"}}};
    double legend_y = top + 10;
    for (const auto& [male, color] : series) {
        const auto levels = analysis.series(male);
        if (levels.empty()) {
            continue;
        }
        std::string points;
        for (const auto* c : levels) {
            const auto& s = c->stat(figure.metric);
            points += f(x(c->p_intra)) + ',' + f(y(s.mean)) + ' ';
            out += "<line x1=\"" + f(x(c->p_intra)) + "\" y1=\"" + f(y(s.mean - s.sd)) + "\" x2=\"" +
                   f(x(c->p_intra)) + "\" y2=\"" + f(y(s.mean + s.sd)) + "\" stroke=\"" + color +
                   "\" stroke-opacity=\"0.6\"/>\n";
            out += "<circle cx=\"" + f(x(c->p_intra)) + "\" cy=\"" + f(y(s.mean)) + "\" r=\"3\" fill=\"" + color +
                   "\"/>\n";
        }
        points.pop_back();
        out += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<line x1=\"" + f(width - right + 15) + "\" y1=\"" + f(legend_y) + "\" x2=\"" +
               f(width - right + 40) + "\" y2=\"" + f(legend_y) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + f(width - right + 46) + "\" y=\"" + f(legend_y + 4) + "\">" +
               (male ? "male" : "no male") + "</text>\n";
        legend_y += 20;
    }
    out += "</svg>\n";
    return out;
}

void write_analysis(const Analysis& analysis, const std::string& directory) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) {
        throw IoError("cannot create directory " + directory);
    }
    const fs::path dir(directory);
    write_file_atomic((dir / "summary.csv").string(), summary_csv(analysis));
    write_file_atomic((dir / "comparisons.csv").string(), comparisons_csv(analysis));
    write_file_atomic((dir / "report.txt").string(), report_text(analysis));
    for (const auto& fig : kFigures) {
        write_file_atomic((dir / (std::string(fig.id) + ".csv")).string(), figure_csv(analysis, fig));
        write_file_atomic((dir / (std::string(fig.id) + ".svg")).string(), figure_svg(analysis, fig));
    }
}

}  // namespace lew
