#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lew/error.hpp"
#include "lew/results_io.hpp"

using namespace lew;

namespace {

std::vector<RunResult> sample() {
    ExperimentConfig c;
    c.rounds = 5;
    auto a = run_simulation(c, 3, 0, 0);
    auto b = run_simulation(c, 4, 0, 1);
    c.male_present = true;
    c.total_agents = 10;
    c.p_male = 0.2;
    c.p_intra = 0.8;
    auto m = run_simulation(c, 5, 1, 0);
    m.p_intra = 0.8;
    return {a, b, m};
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "lew_results_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("header has the fixed column order") {
    std::ostringstream out;
    write_results({}, out);
    CHECK(out.str() ==
          "run_id,condition_id,male_present,p_intra,round,f1_implicit,implicit_precision,implicit_recall,"
          "explicit_rate,seg_correct_rate,mean_agent_lexicon_size,male_lexicon_size,mean_agent_synonymy,"
          "mean_agent_homonymy,global_synonymy,global_homonymy,shared_mappings,mean_agents_per_mapping\n");
}

TEST_CASE("write then read returns equal results") {
    const auto results = sample();
    std::stringstream buf;
    write_results(results, buf);
    const auto back = read_results(buf);
    CHECK(back == results);

    std::ostringstream again;
    write_results(back, again);
    CHECK(again.str() == buf.str());
}

TEST_CASE("missing male values are empty fields") {
    const auto results = sample();
    std::ostringstream out;
    write_results(std::span(results).first(1), out);
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(row.find(",,") != std::string::npos);
}

TEST_CASE("header-only input is an empty result list") {
    std::stringstream buf;
    write_results({}, buf);
    CHECK(read_results(buf).empty());
}

TEST_CASE("malformed rows report their line") {
    const auto results = sample();
    std::ostringstream out;
    write_results(results, out);
    auto text = out.str();

    auto line_of_error = [](const std::string& input) -> std::size_t {
        std::istringstream in(input);
        try {
            (void)read_results(in);
        } catch (const FormatError& e) {
            return e.line();
        }
        return 0;
    };
    const auto third = text.find('\n', text.find('\n', text.find('\n') + 1) + 1);
    auto wrong_count = text;
    wrong_count.insert(third, ",17");  // end of line 3
    CHECK(line_of_error(wrong_count) == 3);

    auto bad_number = text;
    bad_number.replace(bad_number.find('\n') + 1, 1, "x");
    CHECK(line_of_error(bad_number) == 2);

    CHECK(line_of_error("not,a,header\n") == 1);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_results(empty), FormatError);
}

TEST_CASE("file write is atomic and readable") {
    const auto dir = temp_dir();
    const auto path = (dir / "results.csv").string();
    const auto results = sample();
    write_results(results, path);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    CHECK(read_results(path) == results);
    CHECK_THROWS_AS(read_results((dir / "missing.csv").string()), IoError);
    const auto nested = dir / "a" / "b" / "x.csv";
    write_results(results, nested.string());
    CHECK(read_results(nested.string()) == results);
    // A regular file where a directory is needed cannot be written through.
    CHECK_THROWS_AS(write_results(results, (dir / "results.csv" / "x.csv").string()), IoError);
    CHECK_FALSE(std::filesystem::exists(dir / "results.csv" / "x.csv.tmp"));
    std::filesystem::remove_all(dir);
}
