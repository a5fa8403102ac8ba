#include "sphlab/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphlab/dense_solver.hpp"
#include "sphlab/parallel.hpp"

namespace sphlab {

namespace {

void validate_inputs(std::span<const double> field, const ParticleSet& particles,
                     const NeighborList& neighbors, const SmoothingKernel& kernel, double h) {
    detail::require_h(h);
    if (field.size() != particles.size())
        throw std::invalid_argument("scheme estimate: field must be sampled at every particle");
    if (neighbors.offsets.size() != particles.size() + 1)
        throw std::invalid_argument("scheme estimate: neighbor list does not match particle set");
    if (neighbors.radius < kernel.support_radius(h) * (1.0 - 1e-12))
        throw std::invalid_argument("scheme estimate: neighbor radius smaller than kernel support");
}

SchemeEstimate make_estimate(std::size_t n, bool second_derivatives) {
    SchemeEstimate e;
    e.f.assign(n, 0.0);
    e.fx.assign(n, 0.0);
    e.fy.assign(n, 0.0);
    if (second_derivatives) {
        e.fxx.assign(n, 0.0);
        e.fxy.assign(n, 0.0);
        e.fyy.assign(n, 0.0);
    }
    e.fallback.assign(n, 0);
    return e;
}

void finalize_diagnostics(SchemeEstimate& e, const std::vector<double>& pivot_ratios) {
    e.fallback_count = static_cast<std::size_t>(
        std::count(e.fallback.begin(), e.fallback.end(), std::uint8_t{1}));
    e.min_pivot_ratio = 1.0;
    for (double r : pivot_ratios) e.min_pivot_ratio = std::min(e.min_pivot_ratio, r);
}

}  // namespace

SchemeConfig SchemeConfig::fixed_n(SchemeVariant variant, double target_neighbors) {
    if (!(target_neighbors > 0.0))
        throw std::invalid_argument("fixed-n target neighbor count must be positive");
    SchemeConfig c;
    c.variant = variant;
    c.kernel = SmoothingKernel::cubic_spline();
    c.neighbor_mode = NeighborMode::FixedN;
    c.target_neighbors = target_neighbors;
    return c;
}

SchemeConfig SchemeConfig::scaled_n(SchemeVariant variant) {
    if (variant == SchemeVariant::MSPH)
        throw std::invalid_argument("MSPH is only offered in fixed-neighbor mode");
    SchemeConfig c;
    c.variant = variant;
    c.kernel = SmoothingKernel::wendland_c4();
    c.neighbor_mode = NeighborMode::ScaledN;
    return c;
}

double smoothing_length_for(std::size_t count, const SchemeConfig& config) {
    if (count < 4) throw std::invalid_argument("smoothing_length_for: need at least 4 particles");
    const double n = static_cast<double>(count);
    if (config.neighbor_mode == NeighborMode::ScaledN) return std::pow(n, -1.0 / 6.0);
    return std::sqrt(config.target_neighbors / (detail::pi * n)) / config.kernel.support_factor();
}

SchemeEstimate estimate_standard(std::span<const double> field, const ParticleSet& particles,
                                 const NeighborList& neighbors, const SmoothingKernel& kernel,
                                 double h, int threads) {
    validate_inputs(field, particles, neighbors, kernel, h);
    const std::size_t n = particles.size();
    const double vol = particles.volume;
    SchemeEstimate e = make_estimate(n, false);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double ax = particles.x[a];
            const double ay = particles.y[a];
            double sf = 0.0, sfx = 0.0, sfy = 0.0;
            for (std::uint32_t b : neighbors.neighbors(a)) {
                const auto vg = detail::value_gradient_unchecked(
                    kernel, ax - particles.x[b], ay - particles.y[b], h);
                const double fb = field[b];
                sf += fb * vg.w;
                sfx += fb * vg.wx;
                sfy += fb * vg.wy;
            }
            e.f[a] = sf * vol;
            e.fx[a] = sfx * vol;
            e.fy[a] = sfy * vol;
        }
    });
    return e;
}

SchemeEstimate estimate_cspm(std::span<const double> field, const ParticleSet& particles,
                             const NeighborList& neighbors, const SmoothingKernel& kernel,
                             double h, double pivot_tolerance, int threads) {
    validate_inputs(field, particles, neighbors, kernel, h);
    const std::size_t n = particles.size();
    const double vol = particles.volume;
    SchemeEstimate e = make_estimate(n, false);
    std::vector<double> pivot_ratios(n, 1.0);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double ax = particles.x[a];
            const double ay = particles.y[a];
            const double fa = field[a];
            double m0 = 0.0, sf = 0.0;
            double sfx = 0.0, sfy = 0.0;            // standard-gradient fallback sums
            double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
            double r1 = 0.0, r2 = 0.0;
            for (std::uint32_t b : neighbors.neighbors(a)) {
                const double dxa = ax - particles.x[b];
                const double dya = ay - particles.y[b];
                const auto vg = detail::value_gradient_unchecked(kernel, dxa, dya, h);
                const double fb = field[b];
                const double ddx = -dxa;  // x_b - x_a
                const double ddy = -dya;
                m0 += vg.w;
                sf += fb * vg.w;
                sfx += fb * vg.wx;
                sfy += fb * vg.wy;
                a11 += ddx * vg.wx;
                a12 += ddy * vg.wx;
                a21 += ddx * vg.wy;
                a22 += ddy * vg.wy;
                r1 += (fb - fa) * vg.wx;
                r2 += (fb - fa) * vg.wy;
            }
            e.f[a] = (sf * vol) / (m0 * vol);
            const double mat[4] = {a11 * vol, a12 * vol, a21 * vol, a22 * vol};
            const double rhs[2] = {r1 * vol, r2 * vol};
            const auto sol = solve_dense(std::span(mat, 4), std::span(rhs, 2), pivot_tolerance);
            pivot_ratios[a] = sol.pivot_ratio;
            if (sol.ok) {
                e.fx[a] = sol.x[0];
                e.fy[a] = sol.x[1];
            } else {
                e.fx[a] = sfx * vol;
                e.fy[a] = sfy * vol;
                e.fallback[a] = 1;
            }
        }
    });
    finalize_diagnostics(e, pivot_ratios);
    return e;
}

SchemeEstimate estimate_fpm(std::span<const double> field, const ParticleSet& particles,
                            const NeighborList& neighbors, const SmoothingKernel& kernel,
                            double h, double pivot_tolerance, int threads) {
    validate_inputs(field, particles, neighbors, kernel, h);
    const std::size_t n = particles.size();
    const double vol = particles.volume;
    SchemeEstimate e = make_estimate(n, false);
    std::vector<double> pivot_ratios(n, 1.0);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double ax = particles.x[a];
            const double ay = particles.y[a];
            double mat[9] = {};
            double rhs[3] = {};
            for (std::uint32_t b : neighbors.neighbors(a)) {
                const double dxa = ax - particles.x[b];
                const double dya = ay - particles.y[b];
                const auto vg = detail::value_gradient_unchecked(kernel, dxa, dya, h);
                const double fb = field[b];
                const double ddx = -dxa;
                const double ddy = -dya;
                mat[0] += vg.w;
                mat[1] += ddx * vg.w;
                mat[2] += ddy * vg.w;
                mat[3] += vg.wx;
                mat[4] += ddx * vg.wx;
                mat[5] += ddy * vg.wx;
                mat[6] += vg.wy;
                mat[7] += ddx * vg.wy;
                mat[8] += ddy * vg.wy;
                rhs[0] += fb * vg.w;
                rhs[1] += fb * vg.wx;
                rhs[2] += fb * vg.wy;
            }
            for (double& m : mat) m *= vol;
            double scaled_rhs[3] = {rhs[0] * vol, rhs[1] * vol, rhs[2] * vol};
            const auto sol =
                solve_dense(std::span(mat, 9), std::span(scaled_rhs, 3), pivot_tolerance);
            pivot_ratios[a] = sol.pivot_ratio;
            if (sol.ok) {
                e.f[a] = sol.x[0];
                e.fx[a] = sol.x[1];
                e.fy[a] = sol.x[2];
            } else {
                e.f[a] = scaled_rhs[0];
                e.fx[a] = scaled_rhs[1];
                e.fy[a] = scaled_rhs[2];
                e.fallback[a] = 1;
            }
        }
    });
    finalize_diagnostics(e, pivot_ratios);
    return e;
}

SchemeEstimate estimate_msph(std::span<const double> field, const ParticleSet& particles,
                             const NeighborList& neighbors, const SmoothingKernel& kernel,
                             double h, double pivot_tolerance, int threads) {
    validate_inputs(field, particles, neighbors, kernel, h);
    const std::size_t n = particles.size();
    const double vol = particles.volume;
    SchemeEstimate e = make_estimate(n, true);
    std::vector<double> pivot_ratios(n, 1.0);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double ax = particles.x[a];
            const double ay = particles.y[a];
            double mat[36] = {};
            double rhs[6] = {};
            for (std::uint32_t b : neighbors.neighbors(a)) {
                const double dxa = ax - particles.x[b];
                const double dya = ay - particles.y[b];
                const auto kd = detail::derivatives_unchecked(kernel, dxa, dya, h);
                const double fb = field[b];
                const double ddx = -dxa;
                const double ddy = -dya;
                const double phi[6] = {kd.w, kd.wx, kd.wy, kd.wxx, kd.wxy, kd.wyy};
                // Taylor basis: 1, dx, dy, dx^2/2, dx dy, dy^2/2
                const double basis[6] = {1.0,  ddx,       ddy,
                                         0.5 * ddx * ddx, ddx * ddy, 0.5 * ddy * ddy};
                for (int i = 0; i < 6; ++i) {
                    rhs[i] += fb * phi[i];
                    for (int j = 0; j < 6; ++j) mat[i * 6 + j] += phi[i] * basis[j];
                }
            }
            for (double& m : mat) m *= vol;
            double scaled_rhs[6];
            for (int i = 0; i < 6; ++i) scaled_rhs[i] = rhs[i] * vol;

            // Equilibrate: rows/columns of the moment matrix span an h^4
            // dynamic range, which would make the relative pivot test read
            // pure h-scaling as rank deficiency at fine resolutions.  Scale
            // to O(1) entries; the pivot ratio then reflects geometry.
            const double s1 = h, s2 = h * h;
            const double scale[6] = {1.0, s1, s1, s2, s2, s2};
            double eq_mat[36];
            double eq_rhs[6];
            for (int i = 0; i < 6; ++i) {
                eq_rhs[i] = scaled_rhs[i] * scale[i];
                for (int j = 0; j < 6; ++j)
                    eq_mat[i * 6 + j] = mat[i * 6 + j] * (scale[i] / scale[j]);
            }

            const auto sol =
                solve_dense(std::span(eq_mat, 36), std::span(eq_rhs, 6), pivot_tolerance);
            pivot_ratios[a] = sol.pivot_ratio;
            if (sol.ok) {
                e.f[a] = sol.x[0];
                e.fx[a] = sol.x[1] / s1;
                e.fy[a] = sol.x[2] / s1;
                e.fxx[a] = sol.x[3] / s2;
                e.fxy[a] = sol.x[4] / s2;
                e.fyy[a] = sol.x[5] / s2;
                continue;
            }
            e.fallback[a] = 1;
            // first-order fallback: the FPM system is the top-left block
            double fpm_mat[9];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) fpm_mat[i * 3 + j] = eq_mat[i * 6 + j];
            const double fpm_rhs[3] = {eq_rhs[0], eq_rhs[1], eq_rhs[2]};
            const auto fpm_sol =
                solve_dense(std::span(fpm_mat, 9), std::span(fpm_rhs, 3), pivot_tolerance);
            pivot_ratios[a] = std::min(pivot_ratios[a], fpm_sol.pivot_ratio);
            if (fpm_sol.ok) {
                e.f[a] = fpm_sol.x[0];
                e.fx[a] = fpm_sol.x[1] / s1;
                e.fy[a] = fpm_sol.x[2] / s1;
            } else {
                e.f[a] = scaled_rhs[0];
                e.fx[a] = scaled_rhs[1];
                e.fy[a] = scaled_rhs[2];
            }
        }
    });
    finalize_diagnostics(e, pivot_ratios);
    return e;
}

SchemeEstimate estimate(const SchemeConfig& config, std::span<const double> field,
                        const ParticleSet& particles, const NeighborList& neighbors, double h,
                        int threads) {
    switch (config.variant) {
        case SchemeVariant::Standard:
            return estimate_standard(field, particles, neighbors, config.kernel, h, threads);
        case SchemeVariant::CSPM:
            return estimate_cspm(field, particles, neighbors, config.kernel, h,
                                 config.pivot_tolerance, threads);
        case SchemeVariant::FPM:
            return estimate_fpm(field, particles, neighbors, config.kernel, h,
                                config.pivot_tolerance, threads);
        case SchemeVariant::MSPH:
            return estimate_msph(field, particles, neighbors, config.kernel, h,
                                 config.pivot_tolerance, threads);
    }
    throw std::logic_error("unknown scheme variant");
}

}  // namespace sphlab
