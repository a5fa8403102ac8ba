#include "sphlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "sphlab/statistics.hpp"

namespace sphlab {

namespace {

constexpr double width = 760, height = 520;
constexpr double left = 80, right = 710, top = 46, bottom = 456;

constexpr const char* palette[] = {"#1f6fb4", "#d1495b", "#2e8b57", "#b8860b",
                                   "#6a3d9a", "#00838f", "#e36c09"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_slope(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string render_loglog_svg(std::span<const PlotSeries> series,
                              std::span<const double> reference_slopes,
                              const std::string& title, const std::string& x_label,
                              const std::string& y_label) {
    if (series.empty()) throw std::invalid_argument("plot: no series");
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::invalid_argument("plot: series '" + s.name + "' is empty or ragged");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.x[i]) ||
                !std::isfinite(s.y[i]))
                throw std::invalid_argument("plot: series '" + s.name +
                                            "' has non-positive data; log axes need > 0");
            lx0 = std::min(lx0, std::log10(s.x[i]));
            lx1 = std::max(lx1, std::log10(s.x[i]));
            ly0 = std::min(ly0, std::log10(s.y[i]));
            ly1 = std::max(ly1, std::log10(s.y[i]));
        }
    }
    if (lx1 - lx0 < 1e-12) lx1 = lx0 + 1.0;
    if (ly1 - ly0 < 1e-12) ly1 = ly0 + 1.0;
    const double pad_x = 0.04 * (lx1 - lx0), pad_y = 0.06 * (ly1 - ly0);
    lx0 -= pad_x;
    lx1 += pad_x;
    ly0 -= pad_y;
    ly1 += pad_y;

    const auto px = [&](double lx) { return left + (lx - lx0) / (lx1 - lx0) * (right - left); };
    const auto py = [&](double ly) { return bottom - (ly - ly0) / (ly1 - ly0) * (bottom - top); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
        << "font-family=\"sans-serif\">" << title << "</text>\n";

    // decade grid
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const double x = px(e);
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(bottom + 18)
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">1e" << e
            << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        const double y = py(e);
        svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(right)
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e" << e
            << "</text>\n";
    }
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
        << "</text>\n";
    svg << "<text x=\"20\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
        << "transform=\"rotate(-90 20 " << (top + bottom) / 2 << ")\">" << y_label << "</text>\n";

    // reference trends anchored at the first point of the first series
    const double ax = std::log10(series[0].x.front());
    const double ay = std::log10(series[0].y.front());
    for (double slope : reference_slopes) {
        svg << "<polyline fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"6 4\" points=\"";
        const double xa = lx0 + pad_x, xb = lx1 - pad_x;
        svg << fmt(px(xa)) << "," << fmt(py(ay + slope * (xa - ax))) << " " << fmt(px(xb)) << ","
            << fmt(py(ay + slope * (xb - ax)));
        svg << "\"/>\n";
        svg << "<text x=\"" << fmt(px(xb) - 4) << "\" y=\"" << fmt(py(ay + slope * (xb - ax)) - 5)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#888888\" "
            << "font-family=\"sans-serif\">slope " << fmt_slope(slope) << "</text>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(px(std::log10(series[s].x[i]))) << ','
                << fmt(py(std::log10(series[s].y[i])));
        }
        svg << "\"/>\n";
        for (std::size_t i = 0; i < series[s].x.size(); ++i)
            svg << "<circle cx=\"" << fmt(px(std::log10(series[s].x[i]))) << "\" cy=\""
                << fmt(py(std::log10(series[s].y[i]))) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";

        const double ly_text = top + 16 + 16 * static_cast<double>(s);
        std::string label = series[s].name;
        if (series[s].x.size() >= 2) {
            label += "  (fit " + fmt_slope(fit_loglog_slope(series[s].x, series[s].y).slope) + ")";
        }
        svg << "<line x1=\"" << fmt(left + 10) << "\" y1=\"" << fmt(ly_text - 4) << "\" x2=\""
            << fmt(left + 34) << "\" y2=\"" << fmt(ly_text - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(left + 40) << "\" y=\"" << fmt(ly_text)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sphlab
