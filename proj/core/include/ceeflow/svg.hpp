#pragma once

#include <span>
#include <string>
#include <vector>

namespace ceeflow {

struct SvgPoint {
    double x = 0, y = 0;
    std::string label;
    int series = 0;  // color index
};

struct SvgOptions {
    int width = 900;
    int height = 640;
    std::string title;
    std::string x_label = "axis 1";
    std::string y_label = "axis 2";
    bool draw_labels = true;
    /// indices into `points`, drawn as a connected path (trajectory view)
    std::vector<std::vector<std::size_t>> polylines;
};

/// Self-contained SVG scatter of labeled points: axes through the origin,
/// frame, one circle marker per point. No external resources.
std::string scatter_svg(std::span<const SvgPoint> points, const SvgOptions& options = {});

}  // namespace ceeflow
