#include "sphlab/kernel.hpp"

namespace sphlab {

double continuous_moment(const SmoothingKernel& kernel, int order, double h) {
    detail::require_h(h);
    if (order < 0 || order > 4)
        throw std::invalid_argument("continuous_moment: order must be in 0..4");

    const double half_width = kernel.support_radius(h);
    const int panels = 100000;
    const double step = 2.0 * half_width / panels;
    const double norm = detail::norm_1d(kernel.family) / h;

    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double s = -half_width + (i + 0.5) * step;
        const double q = std::abs(s) / h;
        double term = norm * detail::u(kernel.family, q);
        for (int p = 0; p < order; ++p) term *= s;
        sum += term;
    }
    return sum * step;
}

double scaling_relation_defect(const SmoothingKernel& kernel, double r, double h) {
    detail::require_h(h);
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("scaling_relation_defect: r must be finite and non-negative");
    const double lhs = kernel_value(kernel, h * r, h);
    const double rhs = kernel_value(kernel, r, 1.0) / (h * h);
    return std::abs(lhs - rhs);
}

}  // namespace sphlab
