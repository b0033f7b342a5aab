#include "glmb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace glmb {

void SvgPlot::add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, const std::string& legend) {
    series_.push_back({xs, ys, color, legend, false});
}

void SvgPlot::add_points(const std::vector<double>& xs, const std::vector<double>& ys,
                         const std::string& color, const std::string& legend) {
    series_.push_back({xs, ys, color, legend, true});
}

void SvgPlot::write(const std::string& path) const {
    constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series_) {
        for (double x : s.xs) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
        }
        for (double y : s.ys) {
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0;
        x_hi = 1;
        y_lo = 0;
        y_hi = 1;
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    const auto px = [&](double x) { return ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR); };
    const auto py = [&](double y) { return H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB); };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title_
       << "</text>\n";
    // axes with a few ticks
    os << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
       << "' stroke='black'/>\n"
       << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
       << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        os << "<text x='" << px(xv) << "' y='" << H - MB + 18
           << "' text-anchor='middle' font-size='11'>" << xv << "</text>\n"
           << "<text x='" << ML - 6 << "' y='" << py(yv) + 4
           << "' text-anchor='end' font-size='11'>" << yv << "</text>\n";
    }
    os << "<text x='" << (ML + W - MR) / 2 << "' y='" << H - 12
       << "' text-anchor='middle' font-size='13'>" << x_label_ << "</text>\n"
       << "<text x='16' y='" << (MT + H - MB) / 2 << "' text-anchor='middle' font-size='13' "
       << "transform='rotate(-90 16 " << (MT + H - MB) / 2 << ")'>" << y_label_ << "</text>\n";

    double legend_y = MT + 10;
    for (const auto& s : series_) {
        if (s.points) {
            for (size_t i = 0; i < s.xs.size(); ++i)
                os << "<circle cx='" << px(s.xs[i]) << "' cy='" << py(s.ys[i])
                   << "' r='2' fill='" << s.color << "'/>\n";
        } else {
            os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
            for (size_t i = 0; i < s.xs.size(); ++i)
                os << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
            os << "'/>\n";
        }
        if (!s.legend.empty()) {
            os << "<rect x='" << W - MR - 150 << "' y='" << legend_y - 9
               << "' width='14' height='4' fill='" << s.color << "'/>\n"
               << "<text x='" << W - MR - 132 << "' y='" << legend_y
               << "' font-size='12'>" << s.legend << "</text>\n";
            legend_y += 16;
        }
    }
    os << "</svg>\n";

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << os.str();
}

}  // namespace glmb
