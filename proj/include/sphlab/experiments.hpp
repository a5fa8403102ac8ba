#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sphlab/fields.hpp"
#include "sphlab/schemes.hpp"
#include "sphlab/statistics.hpp"

namespace sphlab {

// Built-in resolution ladder (particle counts).  The `table1:<a>-<b>`
// ladder syntax of the CLI indexes this list 1-based.
std::span<const std::size_t> builtin_ladder();

struct Distribution {
    bool jittered = false;
    double amplitude = 0.45;
    std::uint64_t seed = 42;

    static Distribution regular() { return {false, 0.0, 0}; }
    static Distribution irregular(double amplitude, std::uint64_t seed) {
        return {true, amplitude, seed};
    }
    const char* name() const { return jittered ? "irregular" : "regular"; }
};

struct StudyConfig {
    SchemeConfig scheme;
    std::string scheme_name;  // canonical token: sph, cspm, fpm, msph, sphn, ...
    FieldId field = FieldId::F1;
    Distribution distribution;
    std::vector<std::size_t> ladder;
    int threads = 0;
};

// One ladder point.  Second-derivative metrics are present for MSPH only.
struct StudyRow {
    std::size_t n_particles = 0;
    double h = 0.0;
    double mean_interior_n = 0.0;  // NaN when the set has no interior particle
    double rmse_f = 0.0, rmse_fx = 0.0, rmse_fy = 0.0;
    std::optional<double> rmse_fxx, rmse_fxy, rmse_fyy;
    double std_f = 0.0, std_fx = 0.0, std_fy = 0.0;
    std::size_t fallback_count = 0;
    bool degraded = false;  // fallback_count > 1% of N
    double interior_rmse_f = 0.0;
    double min_pivot_ratio = 1.0;
    double wall_seconds = 0.0;

    double rmse(Quantity q) const;
};

struct StudyResult {
    StudyConfig config;
    std::vector<StudyRow> rows;

    bool has_second_derivatives() const;
    // log-log RMSE slope against particle count over all ladder rows
    SlopeFit fit_rmse(Quantity q) const;
    SlopeFit fit_rmse(Quantity q, std::size_t first_rows) const;
    // log-log slope of the error standard deviation against the measured
    // interior neighbor count
    SlopeFit fit_std_vs_n(Quantity q) const;
};

// Runs the ladder: generate particles, derive h, build neighbors at the
// kernel support radius, sample the field, run the scheme, reduce errors.
StudyResult run_study(const StudyConfig& config);

// Slopes of RMSE and of RMSE^2 against N for a study; the squared metric
// fit doubles the slope (log identity).
struct MseDemo {
    double rmse_slope = 0.0;
    double mse_slope = 0.0;
};
MseDemo msph_mse_vs_rmse_demo(const StudyResult& study);

}  // namespace sphlab
