#include "sphlab/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sphlab/parallel.hpp"
#include "sphlab/statistics.hpp"

namespace sphlab {

ConsistencyReport discrete_moments(const ParticleSet& particles, const NeighborList& neighbors,
                                   const SmoothingKernel& kernel, double h, int threads) {
    detail::require_h(h);
    const std::size_t n = particles.size();
    if (neighbors.offsets.size() != n + 1)
        throw std::invalid_argument("discrete_moments: neighbor list does not match particle set");
    const double vol = particles.volume;
    const double support = kernel.support_radius(h);

    ConsistencyReport rep;
    rep.m0.assign(n, 0.0);
    rep.m1x.assign(n, 0.0);
    rep.m1y.assign(n, 0.0);
    rep.g11.assign(n, 0.0);
    rep.g12.assign(n, 0.0);
    rep.g21.assign(n, 0.0);
    rep.g22.assign(n, 0.0);
    rep.sigma2.assign(n, 0.0);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double ax = particles.x[a];
            const double ay = particles.y[a];
            double m0 = 0.0, m1x = 0.0, m1y = 0.0, r2w = 0.0;
            double g11 = 0.0, g12 = 0.0, g21 = 0.0, g22 = 0.0;
            for (std::uint32_t b : neighbors.neighbors(a)) {
                const double bx = particles.x[b];
                const double by = particles.y[b];
                const auto vg = detail::value_gradient_unchecked(kernel, ax - bx, ay - by, h);
                const double ddx = bx - ax;
                const double ddy = by - ay;
                m0 += vg.w;
                m1x += ddx * vg.w;
                m1y += ddy * vg.w;
                r2w += (ddx * ddx + ddy * ddy) * vg.w;
                g11 += ddx * vg.wx;
                g12 += ddx * vg.wy;
                g21 += ddy * vg.wx;
                g22 += ddy * vg.wy;
            }
            rep.m0[a] = m0 * vol;
            rep.m1x[a] = m1x * vol;
            rep.m1y[a] = m1y * vol;
            rep.g11[a] = g11 * vol;
            rep.g12[a] = g12 * vol;
            rep.g21[a] = g21 * vol;
            rep.g22[a] = g22 * vol;
            rep.sigma2[a] = r2w * vol - (rep.m1x[a] * rep.m1x[a] + rep.m1y[a] * rep.m1y[a]);
        }
    });

    double sum_m0 = 0.0, sum_m1 = 0.0, sum_g = 0.0;
    double int_m0 = 0.0, int_s2 = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        const double dm0 = std::abs(rep.m0[a] - 1.0);
        const double dm1 = std::hypot(rep.m1x[a], rep.m1y[a]);
        const double e11 = rep.g11[a] - 1.0;
        const double e22 = rep.g22[a] - 1.0;
        const double dg =
            std::sqrt(e11 * e11 + rep.g12[a] * rep.g12[a] + rep.g21[a] * rep.g21[a] + e22 * e22);
        sum_m0 += dm0;
        sum_m1 += dm1;
        sum_g += dg;
        rep.max_m0_defect = std::max(rep.max_m0_defect, dm0);
        rep.max_m1_norm = std::max(rep.max_m1_norm, dm1);
        rep.max_gradient_defect = std::max(rep.max_gradient_defect, dg);
        const double x = particles.x[a];
        const double y = particles.y[a];
        if (x > support && 1.0 - x > support && y > support && 1.0 - y > support) {
            ++rep.interior_count;
            int_m0 += dm0;
            int_s2 += rep.sigma2[a];
        }
    }
    const double dn = static_cast<double>(n);
    rep.mean_m0_defect = sum_m0 / dn;
    rep.mean_m1_norm = sum_m1 / dn;
    rep.mean_gradient_defect = sum_g / dn;
    if (rep.interior_count > 0) {
        rep.interior_mean_m0_defect = int_m0 / static_cast<double>(rep.interior_count);
        rep.interior_mean_sigma2 = int_s2 / static_cast<double>(rep.interior_count);
    }
    return rep;
}

double m0_convergence_trend(std::span<const double> neighbor_counts,
                            std::span<const double> defects) {
    if (neighbor_counts.size() < 4)
        throw std::invalid_argument("m0_convergence_trend: need at least 4 ladder points");
    return fit_loglog_slope(neighbor_counts, defects).slope;
}

std::optional<std::vector<double>> shepard_normalize(std::span<const double> weights,
                                                     double volume) {
    double sum = 0.0;
    for (double w : weights) sum += w * volume;
    if (sum == 0.0) return std::nullopt;
    std::vector<double> out(weights.begin(), weights.end());
    for (double& w : out) w /= sum;
    return out;
}

void write_report_csv(const ConsistencyReport& report, const ParticleSet& particles,
                      std::ostream& out) {
    out << "particle,x,y,m0,m1x,m1y,g11,g12,g21,g22,sigma2\n";
    char buf[384];
    for (std::size_t a = 0; a < report.size(); ++a) {
        std::snprintf(buf, sizeof(buf),
                      "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", a,
                      particles.x[a], particles.y[a], report.m0[a], report.m1x[a], report.m1y[a],
                      report.g11[a], report.g12[a], report.g21[a], report.g22[a],
                      report.sigma2[a]);
        out << buf;
    }
}

}  // namespace sphlab
