#include <array>
#include <cstdio>
#include <string>

#include "suitescore/report.hpp"

namespace suitescore {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 170.0;   // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

double px(double x) { return kLeft + x / 100.0 * (kWidth - kLeft - kRight); }
double py(double y) { return kHeight - kBottom - y / 100.0 * (kHeight - kTop - kBottom); }

}  // namespace

std::string safe_file_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") out = "_" + out;
    return out;
}

std::string render_trend_svg(const TScoreResult& counter, const std::string& title) {
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "  <text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + escape_xml(title) + "</text>\n";

    // Axes, grid and tick labels.
    svg += "  <g stroke=\"#000\" stroke-width=\"1\">\n";
    svg += "    <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(100)) + "\" y2=\"" +
           num(py(0)) + "\"/>\n";
    svg += "    <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(0)) + "\" y2=\"" +
           num(py(100)) + "\"/>\n";
    svg += "  </g>\n";
    svg += "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#000\">\n";
    for (int tick = 0; tick <= 100; tick += 25) {
        const double t = tick;
        svg += "    <line x1=\"" + num(px(t)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(t)) + "\" y2=\"" +
               num(py(100)) + "\" stroke=\"#ddd\"/>\n";
        svg += "    <line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(px(100)) + "\" y2=\"" +
               num(py(t)) + "\" stroke=\"#ddd\"/>\n";
        svg += "    <text x=\"" + num(px(t)) + "\" y=\"" + num(py(0) + 16) + "\" text-anchor=\"middle\">" +
               std::to_string(tick) + "</text>\n";
        svg += "    <text x=\"" + num(px(0) - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
               std::to_string(tick) + "</text>\n";
    }
    svg += "    <text x=\"" + num(px(50)) + "\" y=\"" + num(kHeight - 12) +
           "\" text-anchor=\"middle\">Execution time (percentile)</text>\n";
    svg += "    <text x=\"16\" y=\"" + num(py(50)) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(py(50)) + ")\">CDF (%)</text>\n";
    svg += "  </g>\n";

    for (std::size_t b = 0; b < counter.normalized.size(); ++b) {
        const auto& series = counter.normalized[b];
        const char* color = kPalette[b % kPalette.size()];
        svg += "  <polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.y.size(); ++i) {
            if (i) svg += " ";
            svg += num(px(series.x_at(i))) + "," + num(py(series.y[i]));
        }
        svg += "\"/>\n";
        const double ly = kTop + 10.0 + 18.0 * static_cast<double>(b);
        svg += "  <line x1=\"" + num(kWidth - kRight + 15) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(kWidth - kRight + 35) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "  <text x=\"" + num(kWidth - kRight + 40) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(series.benchmark) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace suitescore
