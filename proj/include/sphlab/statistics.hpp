#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace sphlab {

// Root mean square over the sample, sqrt((1/N) sum e^2).
inline double rmse(std::span<const double> errors) {
    if (errors.empty()) throw std::invalid_argument("rmse: empty sample");
    double sum = 0.0;
    for (double e : errors) sum += e * e;
    return std::sqrt(sum / static_cast<double>(errors.size()));
}

// Population standard deviation of the signed sample; always <= rmse.
inline double error_std(std::span<const double> errors) {
    if (errors.size() < 2) throw std::invalid_argument("error_std: need at least 2 values");
    const double n = static_cast<double>(errors.size());
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= n;
    double var = 0.0;
    for (double e : errors) var += (e - mean) * (e - mean);
    return std::sqrt(var / n);
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;  // in log10 units
    double r2 = 1.0;
    std::size_t points = 0;
};

// Ordinary least squares on (log10 x, log10 y); all inputs must be > 0.
inline SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit_loglog_slope: need at least 2 points");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw std::invalid_argument("fit_loglog_slope: values must be positive and finite");
        mx += std::log10(x[i]);
        my += std::log10(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log10(x[i]) - mx;
        const double dy = std::log10(y[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate abscissa");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.points = n;
    return fit;
}

}  // namespace sphlab
