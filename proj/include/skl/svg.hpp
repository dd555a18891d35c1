#pragma once

// Standalone SVG 1.1 line charts and heatmaps on a fixed 800x600 canvas.
// Axis ticks sit at the deciles of the data range.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skl::svg {

inline constexpr double width = 800.0;
inline constexpr double height = 600.0;

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

namespace detail {

inline constexpr double left = 80.0, right = 160.0, top = 50.0, bottom = 60.0;

inline std::string num(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

inline std::string escape(const std::string& s) {
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

struct Range {
    double lo, hi;
    [[nodiscard]] double span() const { return hi > lo ? hi - lo : 1.0; }
};

inline Range range_of(const std::vector<double>& v) {
    if (v.empty()) return {0.0, 1.0};
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {*lo, *hi};
}

inline std::string header(const std::string& title) {
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                    "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
                    "viewBox=\"0 0 800 600\">\n"
                    "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(title) + "</text>\n";
    return s;
}

inline std::string axes(Range xr, Range yr, const std::string& xlabel, const std::string& ylabel) {
    const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;
    std::string s = "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y0) + "\"/>\n";
    s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y1) + "\"/>\n";
    s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= 10; ++k) {
        const double fx = x0 + (x1 - x0) * k / 10.0;
        const double vx = xr.lo + (xr.hi - xr.lo) * k / 10.0;
        s += "<line x1=\"" + num(fx) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(fx) + "\" y2=\"" + num(y0 + 5) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(fx) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\">" + num(vx, 3) +
             "</text>\n";
        const double fy = y0 - (y0 - y1) * k / 10.0;
        const double vy = yr.lo + (yr.hi - yr.lo) * k / 10.0;
        s += "<line x1=\"" + num(x0 - 5) + "\" y1=\"" + num(fy) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(fy) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(x0 - 8) + "\" y=\"" + num(fy + 4) + "\" text-anchor=\"end\">" + num(vy, 3) +
             "</text>\n";
    }
    s += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(height - 15) + "\" text-anchor=\"middle\">" +
         escape(xlabel) + "</text>\n";
    s += "<text x=\"20\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         num((y0 + y1) / 2) + ")\">" + escape(ylabel) + "</text>\n";
    s += "</g>\n";
    return s;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    return colors[i % 6];
}

} // namespace detail

[[nodiscard]] inline std::string line_chart(const std::string& title, const std::vector<Series>& series,
                                            const std::string& xlabel, const std::string& ylabel) {
    using namespace detail;
    std::vector<double> xs, ys;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw std::invalid_argument("svg: series length mismatch");
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Range xr = range_of(xs), yr = range_of(ys);
    const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;

    std::string out = header(title) + axes(xr, yr, xlabel, ylabel);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(palette(k)) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double px = x0 + (x1 - x0) * (s.x[i] - xr.lo) / xr.span();
            const double py = y0 - (y0 - y1) * (s.y[i] - yr.lo) / yr.span();
            out += num(px) + "," + num(py) + (i + 1 < s.x.size() ? " " : "");
        }
        out += "\"/>\n";
        const double ly = top + 20.0 * (k + 1);
        out += "<line x1=\"" + num(width - right + 15) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(width - right + 40) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + palette(k) + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(width - right + 45) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

/// Heatmap of values[row * cols + col] with x along columns and y along rows.
[[nodiscard]] inline std::string heatmap(const std::string& title, int rows, int cols, const std::vector<double>& values,
                                         double xlo, double xhi, double ylo, double yhi, const std::string& xlabel,
                                         const std::string& ylabel) {
    using namespace detail;
    if (static_cast<std::size_t>(rows) * cols != values.size()) throw std::invalid_argument("svg: heatmap size");
    const Range vr = range_of(values);
    const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;
    const double cw = (x1 - x0) / cols, ch = (y0 - y1) / rows;

    auto color = [&](double v) {
        const double t = std::clamp((v - vr.lo) / vr.span(), 0.0, 1.0);
        const int r = static_cast<int>(std::lround(255 * t));
        const int g = static_cast<int>(std::lround(255 * (1.0 - std::abs(2.0 * t - 1.0)) * 0.8));
        const int b = static_cast<int>(std::lround(255 * (1.0 - t)));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    std::string out = header(title);
    out += "<g stroke=\"none\">\n";
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out += "<rect x=\"" + num(x0 + c * cw) + "\" y=\"" + num(y0 - (r + 1) * ch) + "\" width=\"" +
                   num(cw + 0.05) + "\" height=\"" + num(ch + 0.05) + "\" fill=\"" +
                   color(values[static_cast<std::size_t>(r) * cols + c]) + "\"/>\n";
    out += "</g>\n";
    out += axes({xlo, xhi}, {ylo, yhi}, xlabel, ylabel);

    // colour bar
    for (int k = 0; k < 10; ++k) {
        const double v = vr.lo + vr.span() * (k + 0.5) / 10.0;
        out += "<rect x=\"" + num(width - right + 30) + "\" y=\"" + num(y0 - (k + 1) * (y0 - y1) / 10.0) +
               "\" width=\"25\" height=\"" + num((y0 - y1) / 10.0) + "\" fill=\"" + color(v) + "\"/>\n";
    }
    for (int k = 0; k <= 10; ++k)
        out += "<text x=\"" + num(width - right + 60) + "\" y=\"" + num(y0 - k * (y0 - y1) / 10.0 + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + num(vr.lo + (vr.hi - vr.lo) * k / 10.0, 3) +
               "</text>\n";
    out += "</svg>\n";
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

} // namespace skl::svg
