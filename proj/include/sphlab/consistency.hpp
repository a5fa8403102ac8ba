#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "sphlab/kernel.hpp"
#include "sphlab/particles.hpp"

namespace sphlab {

// Discrete consistency diagnostics of a particle configuration under a
// kernel: partition-of-unity moment m0, first moments m1, the gradient
// (isotropy) matrix compared against the identity, and the second-moment
// variance term sigma2 that blocks second-order kernel consistency.
struct ConsistencyReport {
    std::vector<double> m0;
    std::vector<double> m1x, m1y;
    // g = sum_b (x_b - x_a) (outer) grad_a W_ab dV; rows index the position
    // component, columns the gradient component.  Equals the identity for an
    // exactly isotropic discretization, and is the matrix of the coupled
    // first-order gradient system.
    std::vector<double> g11, g12, g21, g22;
    std::vector<double> sigma2;

    double mean_m0_defect = 0.0, max_m0_defect = 0.0;            // |m0 - 1|
    double mean_m1_norm = 0.0, max_m1_norm = 0.0;                // |m1|
    double mean_gradient_defect = 0.0, max_gradient_defect = 0.0;  // ||g - I||_F

    // same statistics over particles farther than the kernel support from
    // every edge; interior_count == 0 means the set has no such particles
    std::size_t interior_count = 0;
    double interior_mean_m0_defect = 0.0;
    double interior_mean_sigma2 = 0.0;

    std::size_t size() const { return m0.size(); }
};

ConsistencyReport discrete_moments(const ParticleSet& particles, const NeighborList& neighbors,
                                   const SmoothingKernel& kernel, double h, int threads = 0);

// Log-log least-squares exponent of defect-vs-neighbor-count ladder data;
// needs at least 4 points.
double m0_convergence_trend(std::span<const double> neighbor_counts,
                            std::span<const double> defects);

// Shepard normalization of one particle's kernel weights: w_i -> w_i / (sum
// w_j dV).  nullopt when the effective support is empty (all weights zero).
std::optional<std::vector<double>> shepard_normalize(std::span<const double> weights,
                                                     double volume);

// CSV dump: particle,x,y,m0,m1x,m1y,g11,g12,g21,g22,sigma2
void write_report_csv(const ConsistencyReport& report, const ParticleSet& particles,
                      std::ostream& out);

}  // namespace sphlab
