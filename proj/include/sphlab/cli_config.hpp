#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphlab/schemes.hpp"

namespace sphlab {

// Command-line misuse; the driver maps it to a distinct exit status.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything configurable via flags or a `key = value` config file; flags
// override file keys.  Comparable so the --print-config round trip can be
// checked structurally.
struct StudySettings {
    std::vector<std::string> schemes = {"sph", "cspm", "fpm", "msph", "sphn", "cspmn", "fpmn"};
    std::vector<std::string> fields = {"f1", "f2"};
    std::string distribution = "regular";
    double jitter = 0.45;
    std::uint64_t seed = 42;
    std::string ladder_spec = "table1:1-10";
    std::string out_dir;  // flag > config key > SPHLAB_OUT env > "out"
    bool plots = false;
    int threads = 0;
    bool interior_only = false;

    bool operator==(const StudySettings&) const = default;
};

struct CliConfig {
    std::string command;  // run | diagnose | table | plot
    StudySettings settings;
    bool print_config = false;
    std::vector<std::size_t> ladder;  // resolved from settings.ladder_spec
};

// args exclude the program name.  Unknown flags, unknown config keys and
// invalid values raise UsageError naming the offending token.
CliConfig parse_config(std::span<const std::string> args);

// Canonical `key = value` rendering; re-parsing it yields equal settings.
std::string render_config(const StudySettings& settings);

// `table1` (all rows), `table1:<a>-<b>` (1-based rows of the built-in
// ladder) or an explicit comma list of perfect-square counts.
std::vector<std::size_t> resolve_ladder(const std::string& spec);

// Canonical scheme tokens: sph, cspm, fpm, msph and the scaled-neighbor
// variants sphn, cspmn, fpmn.
SchemeConfig scheme_from_token(const std::string& token);

}  // namespace sphlab
