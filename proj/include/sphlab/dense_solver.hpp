#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace sphlab {

// Solution of a small dense system by Gaussian elimination with partial
// pivoting.  `ok` is false when a pivot fell below pivot_tolerance * max|A|;
// callers decide the fallback.  pivot_ratio is the smallest |pivot| / max|A|
// seen during elimination and doubles as a conditioning proxy.
struct DenseSolveResult {
    bool ok = false;
    double pivot_ratio = 0.0;
    std::array<double, 6> x{};
};

// matrix is row-major n x n with n = rhs.size(); supported sizes are 2, 3, 6.
DenseSolveResult solve_dense(std::span<const double> matrix, std::span<const double> rhs,
                             double pivot_tolerance = 1e-12);

}  // namespace sphlab
