#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mlnl {

/// One polyline on a plot.  x and y must have equal length; on a
/// logarithmic axis nonpositive values are dropped point-by-point.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

/// Renders the series as a self-contained SVG file — axes, decade or
/// nice-step ticks, legend — with deterministic text output so identical
/// data produces identical bytes.  Throws on empty/ragged input or an
/// unwritable path.
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series);

} // namespace mlnl
