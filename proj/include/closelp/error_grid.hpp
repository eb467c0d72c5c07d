#pragma once

#include "closelp/curve.hpp"

#include <span>
#include <string>
#include <vector>

namespace closelp {

struct GridSpec {
    double xmin = -1.5, xmax = 1.5;
    double ymin = -1.5, ymax = 1.5;
    double h = 0.01;
};

inline constexpr double log10_floor = -16.0;

// max(log10(err), -16); exact zero maps to the floor.
double log10_error(double abs_err);

class ErrorGrid {
public:
    // Points on the requested side of the curves are active: inside curves[0]
    // for Side::interior, outside every curve for Side::exterior.
    ErrorGrid(const GridSpec& spec, const std::vector<const Curve*>& curves, Side side);

    const GridSpec& spec() const { return spec_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    Side side() const { return side_; }

    std::vector<cplx> active_points() const;
    std::size_t active_count() const { return active_idx_.size(); }
    // Distance from each active point to the nearest curve.
    const std::vector<double>& active_distance() const { return dist_; }

    // Absolute errors for the active points, in active_points() order.
    void set_errors(std::span<const double> abs_err);

    const std::vector<double>& log10_errors() const { return log10_; } // NaN when masked
    std::vector<double> active_errors() const { return err_; }
    double max_error() const;
    double fraction_at_most(double abs_err) const;

    void write_csv(const std::string& path) const;
    // Writes <dir>/<stem>_<lo>_<hi>.ppm (bounds in log10 units) and returns the path.
    std::string write_ppm(const std::string& dir, const std::string& stem, double lo = -16.0,
                          double hi = 0.0) const;

private:
    GridSpec spec_;
    int nx_ = 0, ny_ = 0;
    Side side_;
    std::vector<cplx> points_;
    std::vector<std::size_t> active_idx_;
    std::vector<double> dist_;
    std::vector<double> err_;
    std::vector<double> log10_;
};

// Colormap used by the heatmaps: t in [0,1] -> dark blue, blue, cyan, yellow, red.
void colormap(double t, unsigned char rgb[3]);

} // namespace closelp
