#include "sphlab/dense_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphlab {

DenseSolveResult solve_dense(std::span<const double> matrix, std::span<const double> rhs,
                             double pivot_tolerance) {
    const std::size_t n = rhs.size();
    if (n != 2 && n != 3 && n != 6)
        throw std::invalid_argument("solve_dense: supported sizes are 2, 3, 6");
    if (matrix.size() != n * n)
        throw std::invalid_argument("solve_dense: matrix/rhs size mismatch");

    double a[36];
    double b[6];
    std::copy(matrix.begin(), matrix.end(), a);
    std::copy(rhs.begin(), rhs.end(), b);

    double max_entry = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) max_entry = std::max(max_entry, std::abs(a[i]));

    DenseSolveResult result;
    if (max_entry == 0.0) return result;  // zero matrix

    double min_ratio = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(a[k * n + k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double mag = std::abs(a[r * n + k]);
            if (mag > pivot_mag) {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        const double ratio = pivot_mag / max_entry;
        min_ratio = std::min(min_ratio, ratio);
        if (ratio < pivot_tolerance) {
            result.pivot_ratio = ratio;
            return result;  // singular signal
        }
        if (pivot_row != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(a[k * n + c], a[pivot_row * n + c]);
            std::swap(b[k], b[pivot_row]);
        }
        const double inv_pivot = 1.0 / a[k * n + k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = a[r * n + k] * inv_pivot;
            if (factor == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= factor * a[k * n + c];
            b[r] -= factor * b[k];
        }
    }

    for (std::size_t k = n; k-- > 0;) {
        double sum = b[k];
        for (std::size_t c = k + 1; c < n; ++c) sum -= a[k * n + c] * result.x[c];
        result.x[k] = sum / a[k * n + k];
    }
    result.ok = true;
    result.pivot_ratio = min_ratio;
    return result;
}

}  // namespace sphlab
