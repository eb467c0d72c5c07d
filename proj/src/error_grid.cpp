#include "closelp/error_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace closelp {

double log10_error(double abs_err)
{
    if (!(abs_err > 0.0))
        return log10_floor;
    return std::max(log10_floor, std::log10(abs_err));
}

ErrorGrid::ErrorGrid(const GridSpec& spec, const std::vector<const Curve*>& curves, Side side)
    : spec_(spec), side_(side)
{
    if (!(spec.h > 0.0))
        throw InvalidArgument("error grid: spacing must be positive");
    if (!(spec.xmax >= spec.xmin) || !(spec.ymax >= spec.ymin))
        throw InvalidArgument("error grid: empty box");
    if (curves.empty())
        throw InvalidArgument("error grid: no curves");
    nx_ = static_cast<int>(std::floor((spec.xmax - spec.xmin) / spec.h + 1e-9)) + 1;
    ny_ = static_cast<int>(std::floor((spec.ymax - spec.ymin) / spec.h + 1e-9)) + 1;
    points_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (int iy = 0; iy < ny_; ++iy)
        for (int ix = 0; ix < nx_; ++ix)
            points_[static_cast<std::size_t>(iy) * nx_ + ix] =
                cplx(spec.xmin + ix * spec.h, spec.ymin + iy * spec.h);

    std::vector<char> active(points_.size());
    std::vector<double> dist(points_.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points_.size()); ++i) {
        double d = std::numeric_limits<double>::infinity();
        bool inside_any = false, inside_first = false;
        for (std::size_t c = 0; c < curves.size(); ++c) {
            const auto p = curves[c]->project(points_[i]);
            d = std::min(d, p.distance);
            if (p.side == Side::interior) {
                inside_any = true;
                if (c == 0)
                    inside_first = true;
            }
        }
        active[i] = side == Side::interior ? inside_first : !inside_any;
        dist[i] = d;
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (active[i]) {
            active_idx_.push_back(i);
            dist_.push_back(dist[i]);
        }
    log10_.assign(points_.size(), std::numeric_limits<double>::quiet_NaN());
}

std::vector<cplx> ErrorGrid::active_points() const
{
    std::vector<cplx> p;
    p.reserve(active_idx_.size());
    for (auto i : active_idx_)
        p.push_back(points_[i]);
    return p;
}

void ErrorGrid::set_errors(std::span<const double> abs_err)
{
    if (abs_err.size() != active_idx_.size())
        throw InvalidArgument("error grid: error count does not match active points");
    err_.assign(abs_err.begin(), abs_err.end());
    for (std::size_t k = 0; k < active_idx_.size(); ++k)
        log10_[active_idx_[k]] = log10_error(abs_err[k]);
}

double ErrorGrid::max_error() const
{
    double m = 0.0;
    for (double e : err_)
        m = std::max(m, e);
    return m;
}

double ErrorGrid::fraction_at_most(double abs_err) const
{
    if (err_.empty())
        return 1.0;
    std::size_t c = 0;
    for (double e : err_)
        if (e <= abs_err)
            ++c;
    return static_cast<double>(c) / err_.size();
}

void ErrorGrid::write_csv(const std::string& path) const
{
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write " + path);
    f << "x,y,log10_err,side\n";
    char buf[160];
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const bool masked = std::isnan(log10_[i]);
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%s,%s\n", points_[i].real(), points_[i].imag(),
                      masked ? "nan" : std::to_string(log10_[i]).c_str(),
                      masked ? "masked" : std::string(to_string(side_)).c_str());
        f << buf;
    }
}

void colormap(double t, unsigned char rgb[3])
{
    static const double stops[5][3] = {
        {0.0, 0.0, 0.35}, {0.0, 0.3, 1.0}, {0.0, 0.9, 0.9}, {1.0, 0.9, 0.0}, {0.8, 0.0, 0.0}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    for (int c = 0; c < 3; ++c)
        rgb[c] = static_cast<unsigned char>(
            std::lround(255.0 * ((1.0 - f) * stops[i][c] + f * stops[i + 1][c])));
}

std::string ErrorGrid::write_ppm(const std::string& dir, const std::string& stem, double lo,
                                 double hi) const
{
    std::ostringstream name;
    name << dir << "/" << stem << "_" << lo << "_" << hi << ".ppm";
    std::ofstream f(name.str(), std::ios::binary);
    if (!f)
        throw Error("cannot write " + name.str());
    f << "P6\n" << nx_ << " " << ny_ << "\n255\n";
    std::vector<unsigned char> row(3 * static_cast<std::size_t>(nx_));
    for (int iy = ny_ - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < nx_; ++ix) {
            const double v = log10_[static_cast<std::size_t>(iy) * nx_ + ix];
            unsigned char* px = &row[3 * static_cast<std::size_t>(ix)];
            if (std::isnan(v)) {
                px[0] = px[1] = px[2] = 255;
            } else {
                colormap((v - lo) / (hi - lo), px);
            }
        }
        f.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    return name.str();
}

} // namespace closelp
