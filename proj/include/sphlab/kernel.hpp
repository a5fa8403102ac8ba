#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphlab {

// Smoothing kernels used by the interpolation schemes, 2D-normalized.
// Both families are radial: W(x - x', h) = (c/h^2) * u(|x - x'| / h),
// with u supported on [0, k) in the scaled coordinate q = r/h.
enum class KernelFamily { CubicSpline, WendlandC4 };

struct SmoothingKernel {
    KernelFamily family = KernelFamily::CubicSpline;

    static SmoothingKernel cubic_spline() { return {KernelFamily::CubicSpline}; }
    static SmoothingKernel wendland_c4() { return {KernelFamily::WendlandC4}; }

    // support factor k: the kernel and every derivative vanish for r >= k*h
    double support_factor() const {
        return family == KernelFamily::CubicSpline ? 2.0 : 1.0;
    }
    double support_radius(double h) const { return support_factor() * h; }

    std::string name() const {
        return family == KernelFamily::CubicSpline ? "cubic-spline" : "wendland-c4";
    }
};

// Value and first/second spatial derivatives at offset (dx, dy).
// Units: w ~ 1/length^2, wx/wy ~ 1/length^3, second derivatives ~ 1/length^4.
struct KernelDerivatives {
    double w = 0.0;
    double wx = 0.0, wy = 0.0;
    double wxx = 0.0, wxy = 0.0, wyy = 0.0;
};

struct KernelValueGrad {
    double w = 0.0;
    double wx = 0.0, wy = 0.0;
};

namespace detail {

inline constexpr double pi = 3.14159265358979323846;

// 2D normalization constants of the radial profiles
inline constexpr double cubic_norm_2d = 15.0 / (7.0 * pi);
inline constexpr double wendland_norm_2d = 9.0 / pi;

// 1D normalization constants; only used by the moment quadrature diagnostics
inline constexpr double cubic_norm_1d = 1.0;
inline constexpr double wendland_norm_1d = 27.0 / 16.0;

// Radial profile u(q), the ratio u'(q)/q and u''(q) for the cubic B-spline
// (support q < 2).  u'/q is analytic at q = 0, so no epsilon guards are
// needed anywhere, including the self-contribution r = 0.
inline double cubic_u(double q) {
    if (q < 1.0) return 2.0 / 3.0 - q * q + 0.5 * q * q * q;
    if (q < 2.0) {
        const double t = 2.0 - q;
        return t * t * t / 6.0;
    }
    return 0.0;
}

inline double cubic_du_over_q(double q) {
    if (q < 1.0) return -2.0 + 1.5 * q;
    if (q < 2.0) {
        const double t = 2.0 - q;
        return -0.5 * t * t / q;
    }
    return 0.0;
}

inline double cubic_d2u(double q) {
    if (q < 1.0) return -2.0 + 3.0 * q;
    if (q < 2.0) return 2.0 - q;
    return 0.0;
}

// Wendland C4 profile u(q) = (1-q)^6 (1 + 6q + 35/3 q^2), support q < 1.
inline double wendland_u(double q) {
    if (q >= 1.0) return 0.0;
    const double t = 1.0 - q;
    const double t2 = t * t;
    const double t6 = t2 * t2 * t2;
    return t6 * (1.0 + q * (6.0 + (35.0 / 3.0) * q));
}

inline double wendland_du_over_q(double q) {
    if (q >= 1.0) return 0.0;
    const double t = 1.0 - q;
    const double t2 = t * t;
    const double t5 = t2 * t2 * t;
    return -(56.0 / 3.0) * (1.0 + 5.0 * q) * t5;
}

inline double wendland_d2u(double q) {
    if (q >= 1.0) return 0.0;
    const double t = 1.0 - q;
    const double t2 = t * t;
    const double t4 = t2 * t2;
    return -(56.0 / 3.0) * (1.0 + q * (4.0 - 35.0 * q)) * t4;
}

inline double norm_2d(KernelFamily f) {
    return f == KernelFamily::CubicSpline ? cubic_norm_2d : wendland_norm_2d;
}

inline double norm_1d(KernelFamily f) {
    return f == KernelFamily::CubicSpline ? cubic_norm_1d : wendland_norm_1d;
}

inline double u(KernelFamily f, double q) {
    return f == KernelFamily::CubicSpline ? cubic_u(q) : wendland_u(q);
}

inline double du_over_q(KernelFamily f, double q) {
    return f == KernelFamily::CubicSpline ? cubic_du_over_q(q) : wendland_du_over_q(q);
}

inline double d2u(KernelFamily f, double q) {
    return f == KernelFamily::CubicSpline ? cubic_d2u(q) : wendland_d2u(q);
}

// Unchecked value at radius r; hot-loop building block.
inline double value_unchecked(const SmoothingKernel& k, double r, double h) {
    const double q = r / h;
    if (q >= k.support_factor()) return 0.0;
    return norm_2d(k.family) / (h * h) * u(k.family, q);
}

// Unchecked value+gradient at offset (dx, dy); derivatives are taken with
// respect to the first kernel argument, so passing dx = x_a - x_b yields
// grad_a W_ab.
inline KernelValueGrad value_gradient_unchecked(const SmoothingKernel& k, double dx,
                                                double dy, double h) {
    const double r2 = dx * dx + dy * dy;
    const double h2 = h * h;
    const double kf = k.support_factor();
    if (r2 >= kf * kf * h2) return {};
    const double q = std::sqrt(r2) / h;
    const double s2 = norm_2d(k.family) / h2;
    const double s4 = s2 / h2;
    const double p = du_over_q(k.family, q);
    return {s2 * u(k.family, q), s4 * p * dx, s4 * p * dy};
}

inline KernelDerivatives derivatives_unchecked(const SmoothingKernel& k, double dx,
                                               double dy, double h) {
    const double r2 = dx * dx + dy * dy;
    const double h2 = h * h;
    const double kf = k.support_factor();
    if (r2 >= kf * kf * h2) return {};
    const double s2 = norm_2d(k.family) / h2;
    const double s4 = s2 / h2;
    KernelDerivatives out;
    if (r2 == 0.0) {
        // radial limit: gradient vanishes, Hessian = u''(0) * I
        out.w = s2 * u(k.family, 0.0);
        out.wxx = out.wyy = s4 * d2u(k.family, 0.0);
        return out;
    }
    const double q = std::sqrt(r2) / h;
    const double p = du_over_q(k.family, q);
    const double upp = d2u(k.family, q);
    const double cx = dx * dx / r2;
    const double cy = dy * dy / r2;
    out.w = s2 * u(k.family, q);
    out.wx = s4 * p * dx;
    out.wy = s4 * p * dy;
    out.wxx = s4 * (upp * cx + p * cy);
    out.wyy = s4 * (upp * cy + p * cx);
    out.wxy = s4 * (upp - p) * dx * dy / r2;
    return out;
}

inline void require_h(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("kernel: smoothing length must be positive and finite");
}

}  // namespace detail

// Kernel value at separation r >= 0; exactly zero for r >= k*h.
inline double kernel_value(const SmoothingKernel& kernel, double r, double h) {
    detail::require_h(h);
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("kernel_value: r must be finite and non-negative");
    return detail::value_unchecked(kernel, r, h);
}

// Value plus first and second derivatives at offset (dx, dy) from the
// evaluation point.  Never returns NaN; the r -> 0 limits are analytic.
inline KernelDerivatives kernel_derivatives(const SmoothingKernel& kernel, double dx,
                                            double dy, double h) {
    detail::require_h(h);
    if (!std::isfinite(dx) || !std::isfinite(dy))
        throw std::invalid_argument("kernel_derivatives: offsets must be finite");
    return detail::derivatives_unchecked(kernel, dx, dy, h);
}

// Moment integral of order l of the 1D-normalized radial profile,
// int s^l W1(|s|, h) ds over the support, by composite midpoint quadrature.
// l = 0 recovers the normalization condition; odd l vanish by symmetry;
// l = 2 is the intrinsic second-moment (variance) term and scales as h^2.
double continuous_moment(const SmoothingKernel& kernel, int order, double h);

// |W(h*r, h) - W(r, 1)/h^2|; an identity for these kernels, so the result
// is bounded by floating-point noise.
double scaling_relation_defect(const SmoothingKernel& kernel, double r, double h);

}  // namespace sphlab
