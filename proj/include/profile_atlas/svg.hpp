#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace patlas {

/// Minimal self-contained SVG scatter/curve plot on the unit square.
/// 800x800 viewport, inline styling, no external assets.
class SvgPlot {
public:
    SvgPlot(std::string x_label, std::string y_label)
        : x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_curve(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                   const std::string& label = "") {
        curves_.push_back({pts, color, label});
    }

    void add_scatter(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                     const std::string& label = "") {
        scatters_.push_back({pts, color, label});
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
               "viewBox=\"0 0 800 800\">\n";
        out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
        // frame and unit-square axes
        out << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kSpan
            << "\" height=\"" << kSpan << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double v = i / 4.0;
            out << "<text x=\"" << px(v) << "\" y=\"" << kPad + kSpan + 24
                << "\" font-size=\"14\" text-anchor=\"middle\">" << fmt(v) << "</text>\n";
            out << "<text x=\"" << kPad - 10 << "\" y=\"" << py(v) + 5
                << "\" font-size=\"14\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
        }
        out << "<text x=\"" << kPad + kSpan / 2 << "\" y=\"" << kPad + kSpan + 48
            << "\" font-size=\"16\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
        out << "<text x=\"20\" y=\"" << kPad + kSpan / 2
            << "\" font-size=\"16\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
            << kPad + kSpan / 2 << ")\">" << y_label_ << "</text>\n";

        int legend = 0;
        for (const auto& c : curves_) {
            out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"2\" points=\"";
            for (auto [x, y] : c.pts) out << fmt(px(x)) << "," << fmt(py(y)) << " ";
            out << "\"/>\n";
            if (!c.label.empty()) emit_legend(out, legend++, c.color, c.label);
        }
        for (const auto& s : scatters_) {
            for (auto [x, y] : s.pts)
                out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                    << "\" r=\"3\" fill=\"" << s.color << "\" fill-opacity=\"0.6\"/>\n";
            if (!s.label.empty()) emit_legend(out, legend++, s.color, s.label);
        }
        out << "</svg>\n";
        return out.str();
    }

private:
    static constexpr double kPad = 70;
    static constexpr double kSpan = 660;

    struct Series {
        std::vector<std::pair<double, double>> pts;
        std::string color;
        std::string label;
    };

    static double px(double x) { return kPad + x * kSpan; }
    static double py(double y) { return kPad + (1 - y) * kSpan; }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }

    static void emit_legend(std::ostringstream& out, int slot, const std::string& color,
                            const std::string& label) {
        const double y = kPad + 20 + 22 * slot;
        out << "<rect x=\"" << kPad + kSpan - 190 << "\" y=\"" << y - 11
            << "\" width=\"14\" height=\"14\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << kPad + kSpan - 170 << "\" y=\"" << y
            << "\" font-size=\"14\">" << label << "</text>\n";
    }

    std::string x_label_, y_label_;
    std::vector<Series> curves_;
    std::vector<Series> scatters_;
};

}  // namespace patlas
