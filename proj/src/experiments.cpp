#include "sphlab/experiments.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sphlab/consistency.hpp"

namespace sphlab {

namespace {

constexpr std::array<std::size_t, 13> ladder_counts = {
    625,   2500,  5625,   10000,  15625,  22500, 30625,
    40000, 62500, 90000, 160000, 250000, 562500};

std::vector<double> signed_errors(std::span<const double> estimate, FieldId field, Quantity q,
                                  const ParticleSet& particles) {
    std::vector<double> e(estimate.size());
    for (std::size_t a = 0; a < estimate.size(); ++a)
        e[a] = estimate[a] - exact_field(field, q, particles.x[a], particles.y[a]);
    return e;
}

}  // namespace

std::span<const std::size_t> builtin_ladder() { return ladder_counts; }

double StudyRow::rmse(Quantity q) const {
    switch (q) {
        case Quantity::F: return rmse_f;
        case Quantity::Fx: return rmse_fx;
        case Quantity::Fy: return rmse_fy;
        case Quantity::Fxx: return rmse_fxx.value();
        case Quantity::Fxy: return rmse_fxy.value();
        case Quantity::Fyy: return rmse_fyy.value();
    }
    throw std::logic_error("unknown quantity");
}

bool StudyResult::has_second_derivatives() const {
    return !rows.empty() && rows.front().rmse_fxx.has_value();
}

SlopeFit StudyResult::fit_rmse(Quantity q) const { return fit_rmse(q, rows.size()); }

SlopeFit StudyResult::fit_rmse(Quantity q, std::size_t first_rows) const {
    const std::size_t count = std::min(first_rows, rows.size());
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < count; ++i) {
        xs.push_back(static_cast<double>(rows[i].n_particles));
        ys.push_back(rows[i].rmse(q));
    }
    return fit_loglog_slope(xs, ys);
}

SlopeFit StudyResult::fit_std_vs_n(Quantity q) const {
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        xs.push_back(row.mean_interior_n);
        switch (q) {
            case Quantity::F: ys.push_back(row.std_f); break;
            case Quantity::Fx: ys.push_back(row.std_fx); break;
            case Quantity::Fy: ys.push_back(row.std_fy); break;
            default: throw std::invalid_argument("std is only tracked for f, fx, fy");
        }
    }
    return fit_loglog_slope(xs, ys);
}

StudyResult run_study(const StudyConfig& config) {
    if (config.ladder.empty()) throw std::invalid_argument("run_study: empty ladder");
    for (std::size_t i = 1; i < config.ladder.size(); ++i)
        if (config.ladder[i] <= config.ladder[i - 1])
            throw std::invalid_argument("run_study: ladder must be strictly increasing");

    StudyResult result;
    result.config = config;
    result.rows.reserve(config.ladder.size());

    for (std::size_t n : config.ladder) {
        try {
            const auto start = std::chrono::steady_clock::now();

            const ParticleSet particles =
                config.distribution.jittered
                    ? generate_irregular(n, config.distribution.amplitude,
                                         config.distribution.seed)
                    : generate_regular(n);
            const double h = smoothing_length_for(n, config.scheme);
            const double radius = config.scheme.support_radius(h);
            const NeighborList neighbors = build_neighbor_list(particles, radius, config.threads);

            std::vector<double> sampled(n);
            for (std::size_t a = 0; a < n; ++a)
                sampled[a] = exact_field(config.field, Quantity::F, particles.x[a], particles.y[a]);

            const SchemeEstimate est =
                estimate(config.scheme, sampled, particles, neighbors, h, config.threads);

            StudyRow row;
            row.n_particles = n;
            row.h = h;
            const auto interior_n = mean_interior_neighbors(particles, radius, config.threads);
            row.mean_interior_n =
                interior_n ? *interior_n : std::numeric_limits<double>::quiet_NaN();

            const auto ef = signed_errors(est.f, config.field, Quantity::F, particles);
            const auto efx = signed_errors(est.fx, config.field, Quantity::Fx, particles);
            const auto efy = signed_errors(est.fy, config.field, Quantity::Fy, particles);
            row.rmse_f = rmse(ef);
            row.rmse_fx = rmse(efx);
            row.rmse_fy = rmse(efy);
            row.std_f = error_std(ef);
            row.std_fx = error_std(efx);
            row.std_fy = error_std(efy);
            if (est.has_second_derivatives()) {
                row.rmse_fxx = rmse(signed_errors(est.fxx, config.field, Quantity::Fxx, particles));
                row.rmse_fxy = rmse(signed_errors(est.fxy, config.field, Quantity::Fxy, particles));
                row.rmse_fyy = rmse(signed_errors(est.fyy, config.field, Quantity::Fyy, particles));
            }

            std::vector<double> interior_ef;
            for (std::size_t a = 0; a < n; ++a) {
                const double x = particles.x[a];
                const double y = particles.y[a];
                if (x > radius && 1.0 - x > radius && y > radius && 1.0 - y > radius)
                    interior_ef.push_back(ef[a]);
            }
            row.interior_rmse_f = interior_ef.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                      : rmse(interior_ef);

            row.fallback_count = est.fallback_count;
            row.degraded = est.fallback_count * 100 > n;
            row.min_pivot_ratio = est.min_pivot_ratio;
            row.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            result.rows.push_back(std::move(row));
        } catch (const std::exception& err) {
            throw std::runtime_error("ladder row N=" + std::to_string(n) + ": " + err.what());
        }
    }
    return result;
}

MseDemo msph_mse_vs_rmse_demo(const StudyResult& study) {
    std::vector<double> xs, rmse_ys, mse_ys;
    for (const auto& row : study.rows) {
        xs.push_back(static_cast<double>(row.n_particles));
        rmse_ys.push_back(row.rmse_f);
        mse_ys.push_back(row.rmse_f * row.rmse_f);
    }
    MseDemo demo;
    demo.rmse_slope = fit_loglog_slope(xs, rmse_ys).slope;
    demo.mse_slope = fit_loglog_slope(xs, mse_ys).slope;
    return demo;
}

}  // namespace sphlab
