#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sphlab/kernel.hpp"
#include "sphlab/particles.hpp"

namespace sphlab {

enum class SchemeVariant { Standard, CSPM, FPM, MSPH };

// FixedN keeps the neighbor count at a target (default 13) by shrinking h
// with resolution; ScaledN grows the neighborhood, h = N^(-1/6).
enum class NeighborMode { FixedN, ScaledN };

struct SchemeConfig {
    SchemeVariant variant = SchemeVariant::Standard;
    SmoothingKernel kernel;
    NeighborMode neighbor_mode = NeighborMode::FixedN;
    double target_neighbors = 13.0;
    double pivot_tolerance = 1e-12;

    // Default pairings: FixedN runs on the cubic spline, ScaledN on the
    // Wendland C4.  MSPH is only offered in FixedN mode.
    static SchemeConfig fixed_n(SchemeVariant variant, double target_neighbors = 13.0);
    static SchemeConfig scaled_n(SchemeVariant variant);

    double support_radius(double h) const { return kernel.support_radius(h); }
};

// Per-particle estimates.  Second derivatives are populated by MSPH only.
struct SchemeEstimate {
    std::vector<double> f;
    std::vector<double> fx, fy;
    std::vector<double> fxx, fxy, fyy;
    std::vector<std::uint8_t> fallback;
    std::size_t fallback_count = 0;
    // smallest pivot/max|A| ratio over all per-particle solves; 1 when no
    // linear systems are involved
    double min_pivot_ratio = 1.0;

    bool has_second_derivatives() const { return !fxx.empty(); }
};

// Smoothing length for a given particle count under the config's neighbor
// mode.  ScaledN: h = N^(-1/6).  FixedN: h = (1/k) sqrt(target / (pi N)),
// the inversion of the interior disk-count estimate.
double smoothing_length_for(std::size_t count, const SchemeConfig& config);

// f_a = sum_b f_b W_ab dV, grad f_a = sum_b f_b grad_a W_ab dV.
SchemeEstimate estimate_standard(std::span<const double> field, const ParticleSet& particles,
                                 const NeighborList& neighbors, const SmoothingKernel& kernel,
                                 double h, int threads = 0);

// Shepard-normalized function value; gradient from the coupled 2x2 system
// with test functions {dW/dx, dW/dy}.  Singular systems fall back to the
// standard gradient and flag the particle.
SchemeEstimate estimate_cspm(std::span<const double> field, const ParticleSet& particles,
                             const NeighborList& neighbors, const SmoothingKernel& kernel,
                             double h, double pivot_tolerance = 1e-12, int threads = 0);

// Simultaneous 3x3 solve for (f, fx, fy) with test functions {W, dW/dx,
// dW/dy}; reproduces linear fields exactly, boundaries included.
SchemeEstimate estimate_fpm(std::span<const double> field, const ParticleSet& particles,
                            const NeighborList& neighbors, const SmoothingKernel& kernel,
                            double h, double pivot_tolerance = 1e-12, int threads = 0);

// 6x6 solve retaining second-order Taylor terms; estimates (f, fx, fy, fxx,
// fxy, fyy).  Singular systems fall back to the FPM solve (then standard),
// with second derivatives zeroed and the particle flagged.
SchemeEstimate estimate_msph(std::span<const double> field, const ParticleSet& particles,
                             const NeighborList& neighbors, const SmoothingKernel& kernel,
                             double h, double pivot_tolerance = 1e-12, int threads = 0);

SchemeEstimate estimate(const SchemeConfig& config, std::span<const double> field,
                        const ParticleSet& particles, const NeighborList& neighbors, double h,
                        int threads = 0);

}  // namespace sphlab
