#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lew/analysis.hpp"
#include "lew/config.hpp"
#include "lew/error.hpp"
#include "lew/results_io.hpp"
#include "lew/simulation.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out = "out";
    std::string input;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> baseline;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    bool quiet = false;
};

std::string config_help() {
    std::string text = "Config keys (key = value, '#' comments, defaults shown):\n";
    for (const auto& key : lew::config_keys()) {
        std::string line = "  " + std::string(key.name) + " = " + std::string(key.default_value);
        if (line.size() < 36) line.resize(36, ' ');
        text += line + "  " + std::string(key.help) + '\n';
    }
    return text;
}

lew::ExperimentConfig load(const Options& opt) {
    auto config = opt.config_path.empty() ? lew::ExperimentConfig{} : lew::load_config_file(opt.config_path);
    if (opt.seed) config.master_seed = *opt.seed;
    if (opt.runs) config.runs = *opt.runs;
    lew::validate(config);
    return config;
}

void make_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw lew::IoError("cannot create directory " + dir);
}

lew::ProgressFn progress(bool quiet) {
    if (quiet) return {};
    return [last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
        const auto tenth = done * 10 / total;
        if (tenth != last || done == total) {
            last = tenth;
            std::fprintf(stderr, "\r%zu/%zu runs", done, total);
            if (done == total) std::fputc('\n', stderr);
        }
    };
}

std::string results_path(const std::string& dir) { return (std::filesystem::path(dir) / "results.csv").string(); }

void sweep(const std::vector<lew::ExperimentConfig>& conditions, const lew::ExperimentConfig& config,
           const Options& opt, bool analyze_after) {
    make_out_dir(opt.out);
    const auto results = lew::run_sweep(conditions, config.runs, config.master_seed, opt.jobs, progress(opt.quiet));
    lew::write_results(results, results_path(opt.out));
    std::cout << "wrote " << results_path(opt.out) << " (" << conditions.size() << " conditions x " << config.runs
              << " runs)\n";
    if (analyze_after) {
        lew::AnalysisOptions aopt;
        aopt.baseline = opt.baseline;
        lew::write_analysis(lew::analyze(results, aopt), opt.out);
        std::cout << "wrote analysis to " << opt.out << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexicon evolution simulator: agents in small groups invent and learn word-meaning mappings."};
    app.footer(config_help());
    app.require_subcommand(1);

    Options opt;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config,-c", opt.config_path, "config file (key = value)");
        sub->add_option("--out,-o", opt.out, "output directory (created if absent)")->capture_default_str();
        sub->add_option("--seed", opt.seed, "override master_seed");
    };
    auto parallel = [&](CLI::App* sub) {
        sub->add_option("--jobs,-j", opt.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--runs", opt.runs, "runs per condition")->check(CLI::PositiveNumber);
        sub->add_flag("--quiet,-q", opt.quiet, "no progress output");
    };

    auto* run = app.add_subcommand("run", "one simulation run of the configured condition");
    common(run);
    auto* sw = app.add_subcommand("sweep", "every condition of the config grid, `runs` runs each");
    common(sw);
    parallel(sw);
    auto* rep = app.add_subcommand("replicate-paper",
                                   "the ten male x p_intra conditions (default 100 runs each), then analyze");
    common(rep);
    parallel(rep);
    rep->add_option("--baseline", opt.baseline, "baseline condition id for the analysis");
    auto* an = app.add_subcommand("analyze", "summary tables, tests and figures from a results CSV");
    an->add_option("results", opt.input, "results CSV")->required();
    an->add_option("--out,-o", opt.out, "output directory (created if absent)")->capture_default_str();
    an->add_option("--baseline", opt.baseline, "baseline condition id (default: no male, p_intra = 1/3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            const auto config = load(opt);
            make_out_dir(opt.out);
            const auto result = lew::run_simulation(config, lew::run_seed(config.master_seed, 0, 0), 0, 0);
            lew::write_results(std::span<const lew::RunResult>(&result, 1), results_path(opt.out));
            std::cout << "wrote " << results_path(opt.out) << '\n';
        } else if (*sw) {
            const auto config = load(opt);
            sweep(lew::expand_grid(config), config, opt, false);
        } else if (*rep) {
            auto config = load(opt);
            if (!opt.runs) config.runs = 100;
            sweep(lew::paper_conditions(config), config, opt, true);
        } else if (*an) {
            const auto results = lew::read_results(opt.input);
            lew::AnalysisOptions aopt;
            aopt.baseline = opt.baseline;
            const auto analysis = lew::analyze(results, aopt);
            lew::write_analysis(analysis, opt.out);
            std::cout << lew::report_text(analysis);
        }
    } catch (const lew::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
