#pragma once

#include <string>
#include <vector>

namespace glmb {

// Minimal static line-chart writer; enough for the experiment figures.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color, const std::string& legend = "");
    void add_points(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::string& color, const std::string& legend = "");
    void write(const std::string& path) const;

private:
    struct Series {
        std::vector<double> xs, ys;
        std::string color, legend;
        bool points = false;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace glmb
