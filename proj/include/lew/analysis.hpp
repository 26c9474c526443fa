#pragma once

// Final-window summaries, Welch comparisons, text report and figure output.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lew/simulation.hpp"
#include "lew/stats.hpp"

namespace lew {

enum class Metric : std::size_t {
    f1_implicit,
    implicit_precision,
    implicit_recall,
    explicit_rate,
    seg_correct_rate,
    mean_agent_lexicon_size,
    male_lexicon_size,
    mean_agent_synonymy,
    mean_agent_homonymy,
    global_synonymy,
    global_homonymy,
    shared_mappings,
    mean_agents_per_mapping,
};

inline constexpr std::size_t kMetricCount = 13;

std::string_view metric_name(Metric metric);
std::span<const Metric> all_metrics();

/// Value of `metric` in `row`; NaN for a missing male lexicon size.
double metric_value(const RoundRow& row, Metric metric);

struct ConditionSummary {
    std::size_t condition_id = 0;
    bool male_present = false;
    double p_intra = 0.0;
    std::size_t runs = 0;
    /// Per-run final-window values, in run order. Empty for the male metric
    /// in conditions without a male.
    std::array<std::vector<double>, kMetricCount> values;
    std::array<SampleSummary, kMetricCount> stats;

    const std::vector<double>& of(Metric m) const { return values[static_cast<std::size_t>(m)]; }
    const SampleSummary& stat(Metric m) const { return stats[static_cast<std::size_t>(m)]; }
};

enum class ComparisonKind { vs_baseline, adjacent, male_vs_members };

std::string_view to_string(ComparisonKind kind);

/// `test` is welch_t_test(first, second), so t > 0 means the first sample is larger.
///   vs_baseline:     first = condition, second = baseline
///   adjacent:        first = higher p_intra, second = next lower level, same male setting
///   male_vs_members: first = male lexicon size, second = mean member lexicon size;
///                    `condition` is empty for the test pooling every male condition
struct Comparison {
    ComparisonKind kind = ComparisonKind::vs_baseline;
    Metric metric = Metric::f1_implicit;
    std::optional<std::size_t> condition;
    std::optional<std::size_t> reference;
    double mean_first = 0.0;
    double mean_second = 0.0;
    WelchResult test;
};

struct AnalysisOptions {
    /// Condition id of the baseline; by default the no-male condition with p_intra = 1/3.
    std::optional<std::size_t> baseline;
    std::size_t window = 10;
};

struct Analysis {
    std::vector<ConditionSummary> conditions;  // male absent first, then by p_intra
    std::size_t baseline = 0;
    std::size_t window = 10;
    std::vector<Comparison> comparisons;

    const ConditionSummary& condition(std::size_t id) const;
    const ConditionSummary* find(bool male_present, double p_intra) const;
    /// Conditions with the given male setting, by increasing p_intra.
    std::vector<const ConditionSummary*> series(bool male_present) const;
    const Comparison* find_comparison(ComparisonKind kind, Metric metric, std::optional<std::size_t> condition,
                                      std::optional<std::size_t> reference = std::nullopt) const;
};

/// Final-window value of one run: mean of `metric` over its last `window` rows.
double final_window(const RunResult& run, Metric metric, std::size_t window);

/// Throws AnalysisError on empty input, a condition with fewer than two
/// runs, a run without rows, inconsistent condition settings, or a missing baseline.
Analysis analyze(std::span<const RunResult> results, const AnalysisOptions& options = {});

struct Trend {
    bool male_present = false;
    std::vector<double> p_intra;
    std::vector<double> means;
    bool strictly_increasing = false;
    bool strictly_decreasing = false;
    /// Highest vs lowest p_intra level (t > 0: the highest level is larger).
    std::optional<WelchResult> endpoints;
};

Trend trend(const Analysis& analysis, Metric metric, bool male_present);

struct Figure {
    std::string_view id;
    Metric metric;
    std::string_view title;
};

/// fig1a..fig3b: F1, lexicon size, agent synonymy/homonymy, global synonymy/homonymy.
std::span<const Figure> figures();

std::string summary_csv(const Analysis& analysis);
std::string comparisons_csv(const Analysis& analysis);
std::string report_text(const Analysis& analysis);
std::string figure_csv(const Analysis& analysis, const Figure& figure);
std::string figure_svg(const Analysis& analysis, const Figure& figure);

/// summary.csv, comparisons.csv, report.txt and <fig>.csv/.svg for every
/// figure, each written atomically into `directory` (created if absent).
void write_analysis(const Analysis& analysis, const std::string& directory);

}  // namespace lew
