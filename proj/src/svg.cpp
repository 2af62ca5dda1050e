#include "gabp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "gabp/csv.hpp"
#include "gabp/error.hpp"

namespace gabp::svg {

namespace {

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void grow(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

} // namespace

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<Series>& series, int width, int height) {
    const double ml = 60, mr = 15, mt = 30, mb = 35;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    Range rx, ry;
    for (const auto& s : series) {
        for (double v : s.x) rx.grow(v);
        for (double v : s.y) ry.grow(v);
    }
    if (!std::isfinite(rx.lo)) { rx.lo = 0; rx.hi = 1; }
    if (!std::isfinite(ry.lo)) { ry.lo = 0; ry.hi = 1; }

    const auto px = [&](double v) { return ml + (v - rx.lo) / rx.span() * pw; };
    const auto py = [&](double v) { return mt + ph - (v - ry.lo) / ry.span() * ph; };

    std::ofstream out(path);
    if (!out) fail(Errc::BadConfig, "svg: cannot write " + path.string());

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\">" << title << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#888\"/>\n";

    // axis extent labels
    out << "<text x=\"" << ml << "\" y=\"" << height - 12
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << csv::format(rx.lo)
        << "</text>\n";
    out << "<text x=\"" << ml + pw << "\" y=\"" << height - 12
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << csv::format(rx.hi) << "</text>\n";
    out << "<text x=\"" << ml - 5 << "\" y=\"" << mt + ph
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << csv::format(ry.lo) << "</text>\n";
    out << "<text x=\"" << ml - 5 << "\" y=\"" << mt + 10
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << csv::format(ry.hi) << "</text>\n";

    int legend_y = static_cast<int>(mt) + 14;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            out << csv::format(px(s.x[i])) << ',' << csv::format(py(s.y[i])) << ' ';
        }
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<text x=\"" << ml + 8 << "\" y=\"" << legend_y << "\" fill=\"" << s.color
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 14;
        }
    }
    out << "</svg>\n";
}

} // namespace gabp::svg
