#pragma once

// Results CSV: one row per recorded round of every run.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lew/simulation.hpp"

namespace lew {

/// Column names in file order.
std::span<const std::string_view> results_columns();

/// Doubles are written in shortest round-trip form, so read_results returns
/// exactly what was written. A run without recorded rows produces no lines.
void write_results(std::span<const RunResult> results, std::ostream& out);

/// Creates missing parent directories, writes to a sibling temp file and
/// renames it over `path` on success.
/// Throws IoError; a failed write leaves no file at `path`.
void write_results(std::span<const RunResult> results, const std::string& path);

/// Rows are grouped into runs by (condition_id, run_id) in order of first
/// appearance. Throws FormatError naming the 1-based line of a bad row.
std::vector<RunResult> read_results(std::istream& in);
std::vector<RunResult> read_results(const std::string& path);

/// Write `content` via temp file + rename. Throws IoError.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace lew
