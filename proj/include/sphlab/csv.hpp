#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sphlab/experiments.hpp"

namespace sphlab {

// Shortest decimal that round-trips a double (17 significant digits).
std::string format_float(double value);

// Write-temp-then-rename so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// One line of the study results table.
struct StudyCsvRow {
    std::string scheme;
    std::string field;
    std::string distribution;
    std::uint64_t seed = 0;
    StudyRow row;
};

std::vector<StudyCsvRow> flatten_results(std::span<const StudyResult> results);

void write_study_csv(std::span<const StudyCsvRow> rows, std::ostream& out);
std::vector<StudyCsvRow> read_study_csv(std::istream& in);

struct SlopeCsvRow {
    std::string scheme;
    std::string field;
    std::string distribution;
    std::string quantity;
    SlopeFit fit;
};

std::vector<SlopeCsvRow> fit_all_slopes(std::span<const StudyCsvRow> rows);
void write_slopes_csv(std::span<const SlopeCsvRow> rows, std::ostream& out);

// Scheme-by-quantity slope matrix in the seven-column layout, dashes for
// quantities a scheme does not estimate; degraded rows are footnoted.
std::string render_slope_table(std::span<const StudyCsvRow> rows);

}  // namespace sphlab
