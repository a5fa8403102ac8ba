#pragma once

#include <span>
#include <string>
#include <vector>

namespace sphlab {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained log-log SVG: one polyline + markers per series, dashed
// reference-trend lines anchored at the first data point of the first
// series, legend with per-series fitted slopes.  Rejects non-positive data,
// naming the offending series.
std::string render_loglog_svg(std::span<const PlotSeries> series,
                              std::span<const double> reference_slopes,
                              const std::string& title, const std::string& x_label,
                              const std::string& y_label);

}  // namespace sphlab
