#pragma once

#include "closelp/error_grid.hpp"
#include "closelp/multibody.hpp"
#include "closelp/reference.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace closelp {

struct ConvergenceRow {
    int n = 0;
    std::string case_name;
    std::string quantity;
    double max_abs_err = 0.0;
};

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);
const ConvergenceRow* find_row(const std::vector<ConvergenceRow>& rows, int n,
                               const std::string& case_name, const std::string& quantity);

// Pointwise errors of a BVP solution against its reference. Interior Neumann
// solutions are unique up to a constant (Laplace) or a rigid motion (Stokes);
// that component is fitted out by least squares first.
struct FieldErrors {
    std::vector<double> u, grad; // Laplace
    std::vector<double> velocity; // Stokes
};
FieldErrors bvp_field_errors(const BvpSpec& spec, const FieldValues& f, const ReferenceField& ref,
                             std::span<const cplx> points);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
    bool skipped = false; // the run did not include the N the check is pinned to
};

// ---- Cauchy distance sweep -------------------------------------------------

struct CauchyTestConfig {
    std::vector<int> ns{200};
    std::vector<double> distances{0.0,   1e-16, 1e-14, 1e-12, 1e-10, 1e-8,
                                  1e-6,  1e-4,  1e-2,  1.0};
    int node = 0; // targets approach this node along its normal (node 0 is the star tip)
    StarShape star;
    cplx interior_pole{1.1, 1.0};
    cplx exterior_pole{0.1, 0.5};
    cplx anchor{-0.1, 0.0};
};

struct CauchySweepRow {
    int n = 0;
    std::string case_name; // interior / exterior
    std::string quantity;  // value / derivative / derivative_unstabilized
    double distance = 0.0;
    double abs_err = 0.0;
};

std::vector<CauchySweepRow> run_cauchy_test(const CauchyTestConfig& cfg);
void write_cauchy_csv(const std::string& path, const std::vector<CauchySweepRow>& rows);
std::vector<Check> check_cauchy(const std::vector<CauchySweepRow>& rows, int n = 200);

// ---- Laplace BVP table -----------------------------------------------------

struct LaplaceTableConfig {
    std::vector<int> ns{100, 150, 200, 250};
    GridSpec grid;
    StarShape star;
    cplx exterior_pole{0.1, 0.3};
};

// Cases DLP_int, DLP_ext, SLP_int, SLP_ext; quantities u, grad.
std::vector<ConvergenceRow> run_laplace_table(const LaplaceTableConfig& cfg);
std::vector<Check> check_laplace_table(const std::vector<ConvergenceRow>& rows);

// ---- Exterior SLP error field (close vs native) ----------------------------

struct LaplaceFieldConfig {
    int n = 240;
    GridSpec grid;
    StarShape star;
    cplx exterior_pole{0.1, 0.3};
};

struct LaplaceFieldResult {
    ErrorGrid close_u, close_grad, native_u, native_grad;
    double native_near_max = 0.0; // largest native u error within 5/N of the curve
};

LaplaceFieldResult run_laplace_field(const LaplaceFieldConfig& cfg);
std::vector<Check> check_laplace_field(const LaplaceFieldResult& r, int n);

// ---- Stokes examples -------------------------------------------------------

// Stokes single layer with density sigma(s) over an analytic curve by
// composite Gauss-Legendre on panels graded toward the parameter closest to x.
cplx stokes_slp_oracle(const CurveSpec& curve, const std::function<cplx(double)>& sigma, cplx x);

struct StokesEx1Config {
    std::vector<double> gaps{0.1, 0.01, 0.001};
    std::vector<int> ns{16, 24, 32, 48, 64, 96, 128, 192, 256};
    int targets = 64; // nodes of the second bubble
};
std::vector<ConvergenceRow> run_stokes_example1(const StokesEx1Config& cfg);
std::vector<Check> check_stokes_example1(const std::vector<ConvergenceRow>& rows);

struct StokesEx2Config {
    std::vector<double> aspects{2.0, 4.0, 8.0};
    std::vector<int> ns{16, 32, 48, 64, 96, 128, 192, 256, 384, 512};
    double distance = 1e-3;
};
std::vector<ConvergenceRow> run_stokes_example2(const StokesEx2Config& cfg);
std::vector<Check> check_stokes_example2(const std::vector<ConvergenceRow>& rows);

struct StokesEx3Config {
    std::vector<int> ns{100, 150, 200, 250, 300, 350};
    GridSpec grid{-1.5, 1.5, -1.5, 1.5, 0.02};
    StarShape star;
    std::vector<Stokeslet> sources; // interior placement; mirrored to radius 2 for interior BVPs
    int field_n = 250;              // N for the exterior Neumann error field (0 = none)
};
std::vector<Stokeslet> default_example3_sources();
std::vector<Stokeslet> mirror_sources(const std::vector<Stokeslet>& s, double radius = 2.0);

struct StokesEx3Result {
    std::vector<ConvergenceRow> rows; // cases ext_dirichlet, int_dirichlet, ext_neumann, int_neumann
    std::vector<std::pair<std::string, double>> data_sup; // boundary data sup norms
    std::optional<ErrorGrid> field;
};
StokesEx3Result run_stokes_example3(const StokesEx3Config& cfg);
std::vector<Check> check_stokes_example3(const StokesEx3Result& r);

struct StokesEx4Config {
    EllipseLayoutOptions layout;
    double grid_h = 0.016;
    double margin = 0.1;
    GmresOptions gmres;
    std::uint64_t force_seed = 11;
};
struct StokesEx4Result {
    double max_err = 0.0;
    int iterations = 0;
    double gmres_residual = 0.0;
    double min_gap = 0.0;
    double data_sup = 0.0;
    std::optional<ErrorGrid> field;
};
StokesEx4Result run_stokes_example4(const StokesEx4Config& cfg);
std::vector<Check> check_stokes_example4(const StokesEx4Result& r);

} // namespace closelp
