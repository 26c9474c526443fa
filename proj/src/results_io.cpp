#include "lew/results_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <utility>

#include "lew/error.hpp"

namespace lew {

namespace {

constexpr std::array<std::string_view, 18> kColumns = {
    "run_id",          "condition_id",       "male_present",       "p_intra",
    "round",           "f1_implicit",        "implicit_precision", "implicit_recall",
    "explicit_rate",   "seg_correct_rate",   "mean_agent_lexicon_size", "male_lexicon_size",
    "mean_agent_synonymy", "mean_agent_homonymy", "global_synonymy", "global_homonymy",
    "shared_mappings", "mean_agents_per_mapping",
};

void put(std::string& line, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, res.ptr);
}

void put(std::string& line, std::size_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <class T>
T parse_number(std::string_view text, std::size_t line, std::string_view column) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
        throw FormatError(line, "bad value '" + std::string(text) + "' in column " + std::string(column));
    }
    return value;
}

}  // namespace

std::span<const std::string_view> results_columns() { return kColumns; }

void write_results(std::span<const RunResult> results, std::ostream& out) {
    std::string line;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i > 0) line += ',';
        line += kColumns[i];
    }
    line += '\n';
    out << line;
    for (const auto& run : results) {
        for (const auto& row : run.rows) {
            line.clear();
            put(line, run.run_id);
            line += ',';
            put(line, run.condition_id);
            line += run.male_present ? ",1," : ",0,";
            put(line, run.p_intra);
            line += ',';
            put(line, row.round);
            for (const double v : {row.f1_implicit, row.implicit_precision, row.implicit_recall, row.explicit_rate,
                                   row.seg_correct_rate, row.mean_agent_lexicon_size}) {
                line += ',';
                put(line, v);
            }
            line += ',';
            if (row.male_lexicon_size) {
                put(line, *row.male_lexicon_size);
            }
            for (const double v :
                 {row.mean_agent_synonymy, row.mean_agent_homonymy, row.global_synonymy, row.global_homonymy}) {
                line += ',';
                put(line, v);
            }
            line += ',';
            put(line, row.shared_mappings);
            line += ',';
            put(line, row.mean_agents_per_mapping);
            line += '\n';
            out << line;
        }
    }
}

void write_file_atomic(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename into " + path);
    }
}

void write_results(std::span<const RunResult> results, const std::string& path) {
    std::ostringstream buffer;
    write_results(results, buffer);
    write_file_atomic(path, buffer.str());
}

std::vector<RunResult> read_results(std::istream& in) {
    std::vector<RunResult> runs;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!header_seen) {
            const auto fields = split(line);
            if (fields.size() != kColumns.size() || !std::equal(fields.begin(), fields.end(), kColumns.begin())) {
                throw FormatError(line_no, "unexpected header");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != kColumns.size()) {
            throw FormatError(line_no, "expected " + std::to_string(kColumns.size()) + " columns, found " +
                                           std::to_string(f.size()));
        }
        auto num = [&](std::size_t col) { return parse_number<double>(f[col], line_no, kColumns[col]); };
        auto count = [&](std::size_t col) { return parse_number<std::size_t>(f[col], line_no, kColumns[col]); };

        const auto run_id = count(0);
        const auto condition_id = count(1);
        if (f[2] != "0" && f[2] != "1") {
            throw FormatError(line_no, "male_present must be 0 or 1");
        }
        const bool male = f[2] == "1";
        const double p_intra = num(3);

        RoundRow row;
        row.round = count(4);
        row.f1_implicit = num(5);
        row.implicit_precision = num(6);
        row.implicit_recall = num(7);
        row.explicit_rate = num(8);
        row.seg_correct_rate = num(9);
        row.mean_agent_lexicon_size = num(10);
        if (!f[11].empty()) {
            row.male_lexicon_size = count(11);
        }
        row.mean_agent_synonymy = num(12);
        row.mean_agent_homonymy = num(13);
        row.global_synonymy = num(14);
        row.global_homonymy = num(15);
        row.shared_mappings = count(16);
        row.mean_agents_per_mapping = num(17);

        const auto key = std::make_pair(condition_id, run_id);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, runs.size()).first;
            runs.push_back(RunResult{run_id, condition_id, male, p_intra, {}});
        }
        auto& run = runs[it->second];
        if (run.male_present != male || run.p_intra != p_intra) {
            throw FormatError(line_no, "condition settings differ from earlier rows of the same run");
        }
        run.rows.push_back(row);
    }
    if (!header_seen) {
        throw FormatError(0, "missing header");
    }
    return runs;
}

std::vector<RunResult> read_results(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return read_results(in);
}

}  // namespace lew
