#include "ceeflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ceeflow {

namespace {

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* kPalette[] = {"#1f6fb4", "#d64545", "#3a9e57", "#9157b8",
                          "#c98a1c", "#4cb3b3", "#8a6f4d", "#666666"};

}  // namespace

std::string scatter_svg(std::span<const SvgPoint> points, const SvgOptions& options) {
    const double W = options.width, H = options.height;
    const double margin = 48;

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!points.empty()) {
        x0 = x1 = points[0].x;
        y0 = y1 = points[0].y;
        for (const auto& p : points) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    const double pad_x = (x1 - x0) > 0 ? 0.06 * (x1 - x0) : 1.0;
    const double pad_y = (y1 - y0) > 0 ? 0.06 * (y1 - y0) : 1.0;
    x0 -= pad_x;
    x1 += pad_x;
    y0 -= pad_y;
    y1 += pad_y;

    const auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (W - 2 * margin); };
    const auto sy = [&](double y) { return H - margin - (y - y0) / (y1 - y0) * (H - 2 * margin); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height
        << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << px(margin) << "\" y=\"" << px(margin) << "\" width=\""
        << px(W - 2 * margin) << "\" height=\"" << px(H - 2 * margin)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // zero lines when the origin is inside the frame
    if (x0 < 0 && x1 > 0)
        out << "<line x1=\"" << px(sx(0)) << "\" y1=\"" << px(margin) << "\" x2=\"" << px(sx(0))
            << "\" y2=\"" << px(H - margin)
            << "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    if (y0 < 0 && y1 > 0)
        out << "<line x1=\"" << px(margin) << "\" y1=\"" << px(sy(0)) << "\" x2=\""
            << px(W - margin) << "\" y2=\"" << px(sy(0))
            << "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";

    if (!options.title.empty())
        out << "<text x=\"" << px(W / 2) << "\" y=\"" << px(margin - 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
            << esc(options.title) << "</text>\n";
    out << "<text x=\"" << px(W / 2) << "\" y=\"" << px(H - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << esc(options.x_label) << "</text>\n";
    out << "<text x=\"14\" y=\"" << px(H / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
        << px(H / 2) << ")\">" << esc(options.y_label) << "</text>\n";

    for (const auto& line : options.polylines) {
        if (line.size() < 2) continue;
        out << "<path d=\"";
        for (std::size_t i = 0; i < line.size(); ++i) {
            const SvgPoint& p = points[line[i]];
            out << (i == 0 ? "M" : "L") << px(sx(p.x)) << " " << px(sy(p.y));
        }
        const int color = points[line[0]].series % 8;
        out << "\" fill=\"none\" stroke=\"" << kPalette[color]
            << "\" stroke-width=\"1.3\" opacity=\"0.75\"/>\n";
    }

    for (const auto& p : points) {
        const char* color = kPalette[p.series % 8];
        out << "<circle cx=\"" << px(sx(p.x)) << "\" cy=\"" << px(sy(p.y))
            << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.85\"/>\n";
        if (options.draw_labels && !p.label.empty())
            out << "<text x=\"" << px(sx(p.x) + 5) << "\" y=\"" << px(sy(p.y) - 4)
                << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#222222\">"
                << esc(p.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace ceeflow
