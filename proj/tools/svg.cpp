#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "commands.hpp"

namespace anyondec::cli {

namespace {

constexpr double width = 800.0;
constexpr double height = 500.0;
constexpr double left = 70.0;
constexpr double right = 190.0;
constexpr double top = 30.0;
constexpr double bottom = 60.0;

std::string px(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    return ec == std::errc{} ? std::string(buf.data(), end) : "0";
}

struct Series {
    const char* id;
    const char* label;
    const char* color;
    const std::vector<double>* values;
};

} // namespace

std::string compare_svg(const ComparisonReport& r) {
    const bool log_axis = !r.times.empty() && r.times.front() > 0.0;
    const double t0 = r.times.empty() ? 0.0 : r.times.front();
    const double t1 = r.times.empty() ? 1.0 : r.times.back();
    auto x_of = [&](double t) {
        const double u = log_axis ? std::log(t / t0) / std::log(t1 / t0) : (t - t0) / (t1 - t0);
        return left + u * (width - left - right);
    };
    // Purity lives in [1/2, 1].
    auto y_of = [&](double p) { return top + (1.0 - p) / 0.5 * (height - top - bottom); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" + px(height) +
         "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) + "\" fill=\"white\"/>\n";
    s += "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
    s += "<line x1=\"" + px(left) + "\" y1=\"" + px(height - bottom) + "\" x2=\"" + px(width - right) + "\" y2=\"" +
         px(height - bottom) + "\"/>\n";
    s += "<line x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) + "\" y2=\"" + px(height - bottom) +
         "\"/>\n";
    s += "</g>\n";
    s += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double p : {0.5, 0.75, 1.0}) {
        s += "<text x=\"" + px(left - 8) + "\" y=\"" + px(y_of(p) + 4) + "\" text-anchor=\"end\">" + px(p) + "</text>\n";
    }
    s += "<text x=\"" + px(left) + "\" y=\"" + px(height - bottom + 18) + "\">" + format_number(t0) + " s</text>\n";
    s += "<text x=\"" + px(width - right) + "\" y=\"" + px(height - bottom + 18) + "\" text-anchor=\"end\">" +
         format_number(t1) + " s</text>\n";
    s += "<text x=\"" + px(0.5 * (left + width - right)) + "\" y=\"" + px(height - 15) +
         "\" text-anchor=\"middle\">time" + std::string(log_axis ? " (log scale)" : "") + "</text>\n";
    s += "<text x=\"18\" y=\"" + px(0.5 * (top + height - bottom)) + "\" transform=\"rotate(-90 18 " +
         px(0.5 * (top + height - bottom)) + ")\" text-anchor=\"middle\">purity</text>\n";
    s += "</g>\n";

    const std::array<Series, 3> series{{
        {"markovian", "Markovian", "#1f77b4", &r.markovian},
        {"shorttime-exact", "Short-time (exact)", "#d62728", &r.shorttime_exact},
        {"shorttime-asymptotic", "Short-time (asymptotic)", "#2ca02c", &r.shorttime_asymptotic},
    }};
    double legend_y = top + 10;
    for (const auto& ser : series) {
        s += "<g id=\"" + std::string(ser.id) + "\">\n<title>" + ser.label + "</title>\n";
        s += "<polyline fill=\"none\" stroke=\"" + std::string(ser.color) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < r.times.size(); ++i) {
            if (i) s += ' ';
            const double p = std::clamp((*ser.values)[i], 0.5, 1.0);
            s += px(x_of(r.times[i])) + "," + px(y_of(p));
        }
        s += "\"/>\n";
        s += "<text x=\"" + px(width - right + 30) + "\" y=\"" + px(legend_y + 4) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + ser.label + "</text>\n";
        s += "<line x1=\"" + px(width - right + 8) + "\" y1=\"" + px(legend_y) + "\" x2=\"" + px(width - right + 26) +
             "\" y2=\"" + px(legend_y) + "\" stroke=\"" + ser.color + "\" stroke-width=\"2\"/>\n";
        s += "</g>\n";
        legend_y += 20;
    }
    s += "</svg>\n";
    return s;
}

} // namespace anyondec::cli
