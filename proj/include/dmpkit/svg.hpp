#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dmpkit/io.hpp"
#include "dmpkit/study.hpp"

namespace dmpkit {

struct PlotSeries {
    std::string label;
    std::string color; // any SVG color string
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    int width_px = 800;
    int height_px = 600;
};

// Paper-style palette: demonstrations red, reproductions blue, further
// series in distinct hues.
inline const char* plot_color(std::size_t index)
{
    static const char* palette[] = {"#d62728", "#1f77b4", "#ff7f0e", "#2ca02c",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    return palette[index % (sizeof palette / sizeof palette[0])];
}

// Short human-oriented number for axis ticks (4 significant digits).
inline std::string tick_label(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v,
                             std::chars_format::general, 4);
    return std::string(buf, res.ptr);
}

namespace detail {

// Pixel coordinates rounded to 0.01 px: stable, compact output text.
inline std::string px(double v)
{
    return format_double(std::round(v * 100.0) / 100.0);
}

} // namespace detail

// Overlaid x/y curves in data coordinates (meters): one polyline per series,
// viewBox fitted to the joint bounding box with a 5% margin, y axis flipped
// to point up. Stroke widths are in screen pixels regardless of data scale.
inline std::string render_trajectory_svg(std::span<const PlotSeries> series,
                                         const PlotOptions& options = {})
{
    bool any = false;
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("plot: series x/y length mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!any) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                any = true;
            } else {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
    }
    if (!any)
        throw std::invalid_argument("plot: no data");

    const double span = std::max(xmax - xmin, ymax - ymin);
    const double margin = span > 0.0 ? 0.05 * span : 1e-3;
    const double mx = xmin - margin;
    const double my = ymin - margin;
    const double w = (xmax - xmin) + 2.0 * margin;
    const double h = (ymax - ymin) + 2.0 * margin;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << options.width_px << "\" height=\"" << options.height_px
        << "\" viewBox=\"" << detail::px(mx) << ' ' << detail::px(my) << ' '
        << detail::px(w) << ' ' << detail::px(h)
        << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    for (const auto& s : series) {
        out << "  <polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" "
               "points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i)
                out << ' ';
            // reflect y about the bounding box midline: SVG y points down
            out << format_double(s.x[i]) << ','
                << format_double(ymin + ymax - s.y[i]);
        }
        out << "\">";
        if (!s.label.empty())
            out << "<title>" << s.label << "</title>";
        out << "</polyline>\n";
    }
    out << "</svg>\n";
    return out.str();
}

// Log-log sweep curves on a fixed pixel canvas: one polyline per letter,
// a tick label per swept value, y ticks at the error range ends, legend in
// the top right corner.
inline std::string render_sweep_svg(const SweepReport& report,
                                    const PlotOptions& options = {})
{
    if (report.axis.empty() || report.errors.empty())
        throw std::invalid_argument("plot: empty report");

    const double W = options.width_px;
    const double H = options.height_px;
    const double left = 70.0, right = 20.0, top = 20.0, bottom = 45.0;

    auto log_safe = [](double v) { return std::log10(std::max(v, 1e-12)); };

    double ax_lo = log_safe(report.axis.front());
    double ax_hi = ax_lo;
    for (double v : report.axis) {
        ax_lo = std::min(ax_lo, log_safe(v));
        ax_hi = std::max(ax_hi, log_safe(v));
    }
    bool any = false;
    double err_lo = 0.0, err_hi = 0.0;
    for (const auto& row : report.errors)
        for (double e : row) {
            if (std::isnan(e))
                continue;
            const double le = log_safe(e);
            if (!any) {
                err_lo = err_hi = le;
                any = true;
            } else {
                err_lo = std::min(err_lo, le);
                err_hi = std::max(err_hi, le);
            }
        }
    if (!any)
        throw std::invalid_argument("plot: report has no finite errors");
    if (ax_hi - ax_lo < 1e-12)
        ax_hi = ax_lo + 1.0;
    if (err_hi - err_lo < 1e-12)
        err_hi = err_lo + 1.0;

    auto X = [&](double v) {
        return left + (log_safe(v) - ax_lo) / (ax_hi - ax_lo) * (W - left - right);
    };
    auto Y = [&](double e) {
        return H - bottom -
               (log_safe(e) - err_lo) / (err_hi - err_lo) * (H - top - bottom);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width_px
        << "\" height=\"" << options.height_px << "\" viewBox=\"0 0 "
        << options.width_px << ' ' << options.height_px << "\">\n";
    out << "  <rect x=\"" << detail::px(left) << "\" y=\"" << detail::px(top)
        << "\" width=\"" << detail::px(W - left - right) << "\" height=\""
        << detail::px(H - top - bottom)
        << "\" fill=\"none\" stroke=\"#888888\"/>\n";

    // x ticks: one per swept value
    for (double v : report.axis) {
        out << "  <line x1=\"" << detail::px(X(v)) << "\" y1=\""
            << detail::px(H - bottom) << "\" x2=\"" << detail::px(X(v))
            << "\" y2=\"" << detail::px(H - bottom + 5.0)
            << "\" stroke=\"#888888\"/>\n";
        out << "  <text x=\"" << detail::px(X(v)) << "\" y=\""
            << detail::px(H - bottom + 18.0)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(v)
            << "</text>\n";
    }
    out << "  <text x=\"" << detail::px(left + (W - left - right) / 2.0)
        << "\" y=\"" << detail::px(H - 8.0)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << report.axis_name
        << "</text>\n";

    // y ticks: error range ends
    for (double e : {std::pow(10.0, err_lo), std::pow(10.0, err_hi)}) {
        out << "  <line x1=\"" << detail::px(left - 5.0) << "\" y1=\""
            << detail::px(Y(e)) << "\" x2=\"" << detail::px(left) << "\" y2=\""
            << detail::px(Y(e)) << "\" stroke=\"#888888\"/>\n";
        out << "  <text x=\"" << detail::px(left - 8.0) << "\" y=\""
            << detail::px(Y(e) + 4.0)
            << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(e)
            << "</text>\n";
    }
    out << "  <text x=\"14\" y=\"" << detail::px(top + (H - top - bottom) / 2.0)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << detail::px(top + (H - top - bottom) / 2.0)
        << ")\">mean error (m)</text>\n";

    for (std::size_t k = 0; k < report.errors.size(); ++k) {
        const auto& row = report.errors[k];
        out << "  <polyline fill=\"none\" stroke=\"" << plot_color(k)
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t j = 0; j < report.axis.size(); ++j) {
            if (std::isnan(row[j]))
                continue;
            if (!first)
                out << ' ';
            first = false;
            out << detail::px(X(report.axis[j])) << ',' << detail::px(Y(row[j]));
        }
        out << "\"/>\n";
        const std::string label =
            k < report.letters.size() ? report.letters[k] : std::to_string(k);
        out << "  <text x=\"" << detail::px(W - right - 8.0) << "\" y=\""
            << detail::px(top + 16.0 + 14.0 * static_cast<double>(k))
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << plot_color(k)
            << "\">" << label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace dmpkit
