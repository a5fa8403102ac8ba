// sphlab: 2D SPH interpolation consistency studies.
//
//   sphlab run       run convergence studies, write results/slopes CSVs
//   sphlab diagnose  discrete consistency reports (m0, m1, isotropy, sigma2)
//   sphlab table     slope matrix from an existing results CSV
//   sphlab plot      log-log SVG figures from an existing results CSV

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sphlab/cli_config.hpp"
#include "sphlab/consistency.hpp"
#include "sphlab/csv.hpp"
#include "sphlab/experiments.hpp"
#include "sphlab/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace sphlab;

namespace {

constexpr const char* usage_text =
    "usage: sphlab <run|diagnose|table|plot> [flags]\n"
    "  --scheme <sph,cspm,fpm,msph,sphn,cspmn,fpmn|all>   schemes to run\n"
    "  --field <f1,f2|all>          test fields\n"
    "  --distribution <regular|irregular>\n"
    "  --jitter <fraction>          lattice jitter amplitude, in [0, 0.5)\n"
    "  --seed <u64>                 jitter seed\n"
    "  --ladder <spec>              table1, table1:<a>-<b>, or N1,N2,...\n"
    "  --out <dir>                  output directory (or $SPHLAB_OUT)\n"
    "  --plots                      also emit SVG figures\n"
    "  --threads <k>                worker threads (0 = hardware)\n"
    "  --interior-only              add interior-only slope rows\n"
    "  --config <path>              key = value config file (flags override)\n"
    "  --print-config               echo the resolved configuration\n";

Distribution distribution_from(const StudySettings& s) {
    return s.distribution == "irregular" ? Distribution::irregular(s.jitter, s.seed)
                                         : Distribution::regular();
}

std::vector<StudyCsvRow> load_results(const fs::path& dir) {
    const fs::path path = dir / "results.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("no results at " + path.string() + "; run `sphlab run`");
    return read_study_csv(in);
}

void write_plots(const std::vector<StudyCsvRow>& rows, const fs::path& dir) {
    // RMSE(f) against N, one figure per (field, distribution)
    for (const char* field : {"f1", "f2"}) {
        for (const char* dist : {"regular", "irregular"}) {
            std::vector<PlotSeries> series;
            for (const char* scheme : {"sph", "cspm", "fpm", "msph", "sphn", "cspmn", "fpmn"}) {
                PlotSeries s;
                s.name = scheme;
                for (const auto& r : rows)
                    if (r.scheme == scheme && r.field == field && r.distribution == dist) {
                        s.x.push_back(static_cast<double>(r.row.n_particles));
                        s.y.push_back(r.row.rmse_f);
                    }
                if (!s.x.empty()) series.push_back(std::move(s));
            }
            if (series.empty()) continue;
            const std::string svg =
                render_loglog_svg(series, {{-1.0, -2.0}},
                                  std::string("RMSE of ") + field + " estimates, " + dist +
                                      " distribution",
                                  "number of particles N", "RMSE");
            write_file_atomic(dir / (std::string("rmse_") + field + "_" + dist + ".svg"), svg);
        }
    }
    // error standard deviation against neighbor count for the scaled-n runs
    for (const char* dist : {"regular", "irregular"}) {
        std::vector<PlotSeries> series;
        for (const char* scheme : {"sphn", "cspmn", "fpmn"}) {
            for (const char* field : {"f1", "f2"}) {
                PlotSeries s;
                s.name = std::string(scheme) + " " + field;
                for (const auto& r : rows)
                    if (r.scheme == scheme && r.field == field && r.distribution == dist) {
                        s.x.push_back(r.row.mean_interior_n);
                        s.y.push_back(r.row.std_f);
                    }
                if (!s.x.empty()) series.push_back(std::move(s));
            }
        }
        if (series.empty()) continue;
        const std::string svg = render_loglog_svg(
            series, {{-1.0}},
            std::string("Error standard deviation vs neighbor count, ") + dist + " distribution",
            "neighbors n", "std of error");
        write_file_atomic(dir / (std::string("std_vs_n_") + dist + ".svg"), svg);
    }
}

int cmd_run(const CliConfig& cfg) {
    const auto& s = cfg.settings;
    const fs::path dir = s.out_dir;
    std::vector<StudyResult> results;
    for (const auto& field : s.fields) {
        for (const auto& scheme : s.schemes) {
            StudyConfig study;
            study.scheme = scheme_from_token(scheme);
            study.scheme_name = scheme;
            study.field = field == "f1" ? FieldId::F1 : FieldId::F2;
            study.distribution = distribution_from(s);
            study.ladder = cfg.ladder;
            study.threads = s.threads;
            std::fprintf(stderr, "running %s %s %s, %zu ladder rows...\n", scheme.c_str(),
                         field.c_str(), study.distribution.name(), study.ladder.size());
            results.push_back(run_study(study));
        }
    }
    const auto rows = flatten_results(results);
    {
        std::ostringstream out;
        write_study_csv(rows, out);
        write_file_atomic(dir / "results.csv", out.str());
    }
    {
        auto slopes = fit_all_slopes(rows);
        if (s.interior_only) {
            // auxiliary interior-only slope rows for the function estimate
            for (const auto& study : results) {
                std::vector<double> xs, ys;
                for (const auto& row : study.rows) {
                    xs.push_back(static_cast<double>(row.n_particles));
                    ys.push_back(row.interior_rmse_f);
                }
                SlopeCsvRow r;
                r.scheme = study.config.scheme_name;
                r.field = field_name(study.config.field);
                r.distribution = study.config.distribution.name();
                r.quantity = "f_interior";
                r.fit = fit_loglog_slope(xs, ys);
                slopes.push_back(std::move(r));
            }
        }
        std::ostringstream out;
        write_slopes_csv(slopes, out);
        write_file_atomic(dir / "slopes.csv", out.str());
    }
    if (s.plots) write_plots(rows, dir);
    std::cout << render_slope_table(rows);
    std::cout << "wrote " << (dir / "results.csv").string() << " and "
              << (dir / "slopes.csv").string() << "\n";
    return 0;
}

int cmd_diagnose(const CliConfig& cfg) {
    const auto& s = cfg.settings;
    const fs::path dir = s.out_dir;
    const SmoothingKernel kernel = SmoothingKernel::wendland_c4();
    std::vector<double> ns, defects;
    std::printf("%8s %10s %14s %14s %14s %12s\n", "N", "h", "interior_n", "mean|m0-1|",
                "interior|m0-1|", "sigma2");
    for (std::size_t n : cfg.ladder) {
        const ParticleSet particles = s.distribution == "irregular"
                                          ? generate_irregular(n, s.jitter, s.seed)
                                          : generate_regular(n);
        const double h = std::pow(static_cast<double>(n), -1.0 / 6.0);
        const NeighborList neighbors = build_neighbor_list(particles, h, s.threads);
        const auto report = discrete_moments(particles, neighbors, kernel, h, s.threads);
        const auto interior_n = mean_interior_neighbors(particles, h, s.threads);

        std::ostringstream out;
        write_report_csv(report, particles, out);
        write_file_atomic(dir / ("consistency_N" + std::to_string(n) + ".csv"), out.str());
        std::ostringstream pos;
        write_positions_csv(particles, pos);
        write_file_atomic(dir / ("particles_N" + std::to_string(n) + ".csv"), pos.str());

        std::printf("%8zu %10.4f %14.1f %14.6g %14.6g %12.5g\n", n, h,
                    interior_n.value_or(-1.0), report.mean_m0_defect,
                    report.interior_mean_m0_defect, report.interior_mean_sigma2);
        if (interior_n && report.interior_mean_m0_defect > 0.0) {
            ns.push_back(*interior_n);
            defects.push_back(report.interior_mean_m0_defect);
        }
    }
    if (ns.size() >= 4)
        std::printf("interior |m0-1| vs n trend exponent: %.3f\n",
                    m0_convergence_trend(ns, defects));
    return 0;
}

int cmd_table(const CliConfig& cfg) {
    const fs::path dir = cfg.settings.out_dir;
    const auto rows = load_results(dir);
    const auto slopes = fit_all_slopes(rows);
    std::ostringstream out;
    write_slopes_csv(slopes, out);
    write_file_atomic(dir / "slopes.csv", out.str());
    std::cout << render_slope_table(rows);
    return 0;
}

int cmd_plot(const CliConfig& cfg) {
    const fs::path dir = cfg.settings.out_dir;
    write_plots(load_results(dir), dir);
    std::cout << "wrote figures to " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const CliConfig cfg = parse_config(args);
        if (cfg.print_config) {
            std::cout << render_config(cfg.settings);
            return 0;
        }
        if (cfg.command == "run") return cmd_run(cfg);
        if (cfg.command == "diagnose") return cmd_diagnose(cfg);
        if (cfg.command == "table") return cmd_table(cfg);
        return cmd_plot(cfg);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n\n" << usage_text;
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
