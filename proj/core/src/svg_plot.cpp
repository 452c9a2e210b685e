#include "mlnl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mlnl {

namespace {

constexpr double canvas_w = 720.0, canvas_h = 480.0;
constexpr double margin_l = 72.0, margin_r = 24.0, margin_t = 44.0, margin_b = 56.0;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0.0, hi = 1.0; // in plot units (log10 when log)
    double pix0 = 0.0, pix1 = 1.0;

    double to_pix(double v) const
    {
        const double t = (v - lo) / (hi - lo);
        return pix0 + t * (pix1 - pix0);
    }
};

/// Tick positions in plot units: decades on a log axis, 1/2/5-steps
/// otherwise.
std::vector<double> ticks_for(const Axis& ax)
{
    std::vector<double> t;
    if (ax.log) {
        for (double d = std::ceil(ax.lo - 1e-9); d <= ax.hi + 1e-9; d += 1.0)
            t.push_back(d);
        if (t.size() < 2) { // less than one decade of range: fall back to ends
            t = {ax.lo, ax.hi};
        }
        return t;
    }
    const double span = ax.hi - ax.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    const double first = std::ceil(ax.lo / step - 1e-9) * step;
    for (double v = first; v <= ax.hi + 1e-9 * span; v += step)
        t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
}

} // namespace

void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series)
{
    if (series.empty())
        throw std::invalid_argument("write_svg_plot: no series");
    for (const auto& s : series)
        if (s.x.size() != s.y.size() || s.x.empty())
            throw std::invalid_argument("write_svg_plot: series '" + s.label +
                                        "' is empty or ragged");

    // Collect plottable points (log axes drop nonpositive coordinates).
    const auto usable = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y))
            return false;
        if (spec.log_x && x <= 0.0)
            return false;
        if (spec.log_y && y <= 0.0)
            return false;
        return true;
    };

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i]))
                continue;
            const double px = spec.log_x ? std::log10(s.x[i]) : s.x[i];
            const double py = spec.log_y ? std::log10(s.y[i]) : s.y[i];
            if (!any) {
                xmin = xmax = px;
                ymin = ymax = py;
                any = true;
            } else {
                xmin = std::min(xmin, px);
                xmax = std::max(xmax, px);
                ymin = std::min(ymin, py);
                ymax = std::max(ymax, py);
            }
        }
    if (!any)
        throw std::invalid_argument("write_svg_plot: no plottable points (log axis of "
                                    "nonpositive data?)");

    const auto pad = [](double& lo, double& hi) {
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            const double eps = std::max(0.5, std::abs(hi) * 0.1);
            lo -= eps;
            hi += eps;
        } else {
            const double eps = 0.05 * (hi - lo);
            lo -= eps;
            hi += eps;
        }
    };
    pad(xmin, xmax);
    pad(ymin, ymax);

    Axis xa{spec.log_x, xmin, xmax, margin_l, canvas_w - margin_r};
    Axis ya{spec.log_y, ymin, ymax, canvas_h - margin_b, margin_t}; // y grows upward

    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas_w << "\" height=\""
        << canvas_h << "\" viewBox=\"0 0 " << canvas_w << " " << canvas_h << "\">\n";
    out << "<rect width=\"" << canvas_w << "\" height=\"" << canvas_h
        << "\" fill=\"#ffffff\"/>\n";
    out << "<text x=\"" << canvas_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(spec.title)
        << "</text>\n";

    // Frame.
    out << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\""
        << canvas_w - margin_l - margin_r << "\" height=\"" << canvas_h - margin_t - margin_b
        << "\" fill=\"none\" stroke=\"#444444\"/>\n";

    // Ticks, grid lines, labels.
    for (double tv : ticks_for(xa)) {
        const double px = xa.to_pix(tv);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << canvas_h - margin_b << "\" x2=\""
            << fmt(px) << "\" y2=\"" << margin_t << "\" stroke=\"#dddddd\"/>\n";
        const double shown = spec.log_x ? std::pow(10.0, tv) : tv;
        out << "<text x=\"" << fmt(px) << "\" y=\"" << canvas_h - margin_b + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(shown) << "</text>\n";
    }
    for (double tv : ticks_for(ya)) {
        const double py = ya.to_pix(tv);
        out << "<line x1=\"" << margin_l << "\" y1=\"" << fmt(py) << "\" x2=\""
            << canvas_w - margin_r << "\" y2=\"" << fmt(py) << "\" stroke=\"#dddddd\"/>\n";
        const double shown = spec.log_y ? std::pow(10.0, tv) : tv;
        out << "<text x=\"" << margin_l - 6 << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(shown) << "</text>\n";
    }
    out << "<text x=\"" << (margin_l + canvas_w - margin_r) / 2 << "\" y=\""
        << canvas_h - 14 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\">" << xml_escape(spec.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << (margin_t + canvas_h - margin_b) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (margin_t + canvas_h - margin_b) / 2 << ")\">"
        << xml_escape(spec.y_label) << "</text>\n";

    // Series.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % (sizeof palette / sizeof palette[0])];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i]))
                continue;
            const double px = xa.to_pix(spec.log_x ? std::log10(s.x[i]) : s.x[i]);
            const double py = ya.to_pix(spec.log_y ? std::log10(s.y[i]) : s.y[i]);
            points += fmt(px) + "," + fmt(py) + " ";
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" "
            << "points=\"" << points << "\"/>\n";
        // Point markers make single-point series visible too.
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i]))
                continue;
            const double px = xa.to_pix(spec.log_x ? std::log10(s.x[i]) : s.x[i]);
            const double py = ya.to_pix(spec.log_y ? std::log10(s.y[i]) : s.y[i]);
            out << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
                << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
        }
    }

    // Legend.
    double ly = margin_t + 14;
    for (std::size_t si = 0; si < series.size(); ++si) {
        if (series[si].label.empty())
            continue;
        const char* color = palette[si % (sizeof palette / sizeof palette[0])];
        const double lx = canvas_w - margin_r - 150;
        out << "<line x1=\"" << lx << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << lx + 22
            << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 28 << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(series[si].label)
            << "</text>\n";
        ly += 17;
    }

    out << "</svg>\n";
    if (!out)
        throw std::runtime_error("short write to " + path.string());
}

} // namespace mlnl
