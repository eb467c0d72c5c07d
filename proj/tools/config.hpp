#pragma once

#include "closelp/experiments.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace closelp::cli {

using nlohmann::json;

json load_config(const std::string& path); // empty object when path is empty

CurveSpec parse_curve(const json& j);
StarShape parse_star(const json& j); // curve object of family "star"
GridSpec parse_grid(const json& j);
ReferenceField parse_reference(const json& j);

CauchyTestConfig parse_cauchy(const json& j);
LaplaceTableConfig parse_laplace_table(const json& j);
StokesEx1Config parse_stokes1(const json& j);
StokesEx2Config parse_stokes2(const json& j);
StokesEx3Config parse_stokes3(const json& j);
StokesEx4Config parse_stokes4(const json& j);

// Single BVP rendered on a grid. Defaults reproduce the exterior SLP
// (Neumann) field on star(0.3,5) with N=240.
struct GridRunConfig {
    BvpSpec spec; // data filled from the reference
    ReferenceField reference = ReferenceField::complex_pole({cplx(0.1, 0.3)});
    CurveSpec classify_curve;
    GridSpec grid;
    bool native = true;
    double color_lo = -16.0, color_hi = 0.0;
    double check_u = 1e-12, check_grad = 1e-10, check_velocity = 1e-10;
    double check_fraction = 0.99;
};
GridRunConfig parse_grid_run(const json& j);

} // namespace closelp::cli
