#include "closelp/cauchy.hpp"
#include "closelp/laplace.hpp"
#include "closelp/nystrom.hpp"
#include "closelp/stokes.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace closelp;

namespace {

template <class T>
py::array_t<T> array(const std::vector<T>& v)
{
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

Curve make_curve(std::variant<StarShape, EllipseShape> shape, int n, cplx center, double angle,
                 double scale)
{
    return Curve::analytic({shape, {center, angle, scale}, n});
}

py::tuple potential(const PotentialResult& r)
{
    return py::make_tuple(array(r.u), array(r.gradient));
}

std::vector<cplx> cauchy(const Curve& c, const std::vector<cplx>& v,
                         const std::vector<cplx>& points, Side side, bool derivative,
                         bool stabilize, std::optional<cplx> anchor)
{
    CauchyOptions opts;
    opts.stabilize = stabilize;
    const TargetBatch t = TargetBatch::make(c, points, side, opts);
    if (side == Side::interior)
        return derivative ? cauchy_derivative_interior(c, v, t, opts)
                          : cauchy_value_interior(c, v, t, opts);
    const ExteriorAnchor a = anchor ? ExteriorAnchor(c, *anchor) : ExteriorAnchor::centroid(c);
    return derivative ? cauchy_derivative_exterior(c, v, t, a, opts)
                      : cauchy_value_exterior(c, v, t, a, opts);
}

BvpSpec make_bvp(Equation eq, Condition cond, Side side, const Curve& c, std::vector<double> data)
{
    BvpSpec s;
    s.equation = eq;
    s.condition = cond;
    s.side = side;
    s.curves = {c};
    s.data = {std::move(data)};
    s.validate();
    return s;
}

py::dict field(const FieldValues& f)
{
    py::dict d;
    if (!f.u.empty()) {
        d["u"] = array(f.u);
        d["gradient"] = array(f.gradient);
    }
    if (!f.velocity.empty())
        d["velocity"] = array(f.velocity);
    return d;
}

} // namespace

PYBIND11_MODULE(closelp, m)
{
    m.doc() = "Close evaluation of Laplace and Stokes layer potentials on smooth closed curves";

    // translators run newest first, so the subclass goes last
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::enum_<Side>(m, "Side").value("interior", Side::interior).value("exterior", Side::exterior);
    py::enum_<Equation>(m, "Equation")
        .value("laplace", Equation::laplace)
        .value("stokes", Equation::stokes);
    py::enum_<Condition>(m, "Condition")
        .value("dirichlet", Condition::dirichlet)
        .value("neumann", Condition::neumann);

    py::class_<Curve>(m, "Curve")
        .def_static("from_samples", &Curve::from_samples, py::arg("nodes"))
        .def_property_readonly("n", &Curve::size)
        .def_property_readonly("nodes", [](const Curve& c) { return array(c.nodes()); })
        .def_property_readonly("d_nodes", [](const Curve& c) { return array(c.d_nodes()); })
        .def_property_readonly("normals", [](const Curve& c) { return array(c.normals()); })
        .def_property_readonly("curvature", [](const Curve& c) { return array(c.curvature()); })
        .def_property_readonly("weights", [](const Curve& c) { return array(c.weights()); })
        .def_property_readonly("params", [](const Curve& c) {
            std::vector<double> s(c.size());
            for (int j = 0; j < c.size(); ++j)
                s[j] = c.param(j);
            return array(s);
        })
        .def("perimeter", &Curve::perimeter)
        .def("side_of", &Curve::side_of, py::arg("x"))
        .def("distance", [](const Curve& c, cplx x) { return c.project(x).distance; }, py::arg("x"));

    m.def(
        "star_curve",
        [](int n, double amplitude, int frequency, cplx center, double angle, double scale) {
            return make_curve(StarShape{amplitude, frequency}, n, center, angle, scale);
        },
        py::arg("n"), py::arg("amplitude") = 0.3, py::arg("frequency") = 5,
        py::arg("center") = cplx(0.0), py::arg("angle") = 0.0, py::arg("scale") = 1.0);
    m.def(
        "ellipse_curve",
        [](int n, double a, double b, cplx center, double angle, double scale) {
            return make_curve(EllipseShape{a, b}, n, center, angle, scale);
        },
        py::arg("n"), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("center") = cplx(0.0),
        py::arg("angle") = 0.0, py::arg("scale") = 1.0);

    m.def(
        "cauchy",
        [](const Curve& c, const std::vector<cplx>& v, const std::vector<cplx>& points, Side side,
           bool derivative, bool stabilize, std::optional<cplx> anchor) {
            return array(cauchy(c, v, points, side, derivative, stabilize, anchor));
        },
        "Holomorphic function (or derivative) from its boundary values", py::arg("curve"),
        py::arg("values"), py::arg("points"), py::arg("side"), py::arg("derivative") = false,
        py::arg("stabilize") = true, py::arg("anchor") = py::none());

    m.def(
        "laplace_slp",
        [](const Curve& c, const std::vector<double>& tau, const std::vector<cplx>& x, Side side) {
            return potential(laplace_slp_eval(c, tau, x, side));
        },
        "(u, du/dx + i du/dy) of the single layer", py::arg("curve"), py::arg("tau"),
        py::arg("points"), py::arg("side"));
    m.def(
        "laplace_dlp",
        [](const Curve& c, const std::vector<double>& tau, const std::vector<cplx>& x, Side side) {
            return potential(laplace_dlp_eval(c, tau, x, side));
        },
        "(u, du/dx + i du/dy) of the double layer", py::arg("curve"), py::arg("tau"),
        py::arg("points"), py::arg("side"));
    m.def(
        "laplace_slp_native",
        [](const Curve& c, const std::vector<double>& tau, const std::vector<cplx>& x) {
            return potential(laplace_slp_native(c, tau, x));
        },
        py::arg("curve"), py::arg("tau"), py::arg("points"));
    m.def(
        "laplace_dlp_native",
        [](const Curve& c, const std::vector<double>& tau, const std::vector<cplx>& x) {
            return potential(laplace_dlp_native(c, tau, x));
        },
        py::arg("curve"), py::arg("tau"), py::arg("points"));

    m.def(
        "stokes_slp",
        [](const Curve& c, const std::vector<cplx>& sigma, const std::vector<cplx>& x, Side side) {
            return array(stokes_slp_eval(c, sigma, x, side));
        },
        "Velocity u1 + i u2 of the single layer", py::arg("curve"), py::arg("sigma"),
        py::arg("points"), py::arg("side"));
    m.def(
        "stokes_dlp",
        [](const Curve& c, const std::vector<cplx>& sigma, const std::vector<cplx>& x, Side side) {
            return array(stokes_dlp_eval(c, sigma, x, side));
        },
        "Velocity u1 + i u2 of the double layer", py::arg("curve"), py::arg("sigma"),
        py::arg("points"), py::arg("side"));
    m.def(
        "stokes_slp_native",
        [](const Curve& c, const std::vector<cplx>& sigma, const std::vector<cplx>& x) {
            return array(stokes_slp_native(c, sigma, x));
        },
        py::arg("curve"), py::arg("sigma"), py::arg("points"));
    m.def(
        "stokes_dlp_native",
        [](const Curve& c, const std::vector<cplx>& sigma, const std::vector<cplx>& x) {
            return array(stokes_dlp_native(c, sigma, x));
        },
        py::arg("curve"), py::arg("sigma"), py::arg("points"));

    py::class_<BvpSolution>(m, "BvpSolution")
        .def_property_readonly("density", [](const BvpSolution& s) { return array(s.density); })
        .def_readonly("relative_residual", &BvpSolution::relative_residual)
        .def_readonly("rank", &BvpSolution::rank)
        .def_readonly("certified", &BvpSolution::certified)
        .def_readonly("compatibility", &BvpSolution::compatibility);

    m.def(
        "solve_bvp",
        [](Equation eq, Condition cond, Side side, const Curve& c, std::vector<double> data) {
            return solve_bvp(make_bvp(eq, cond, side, c, std::move(data)));
        },
        "Dense Nystrom solve; Stokes data are interleaved (f1, f2) per node", py::arg("equation"),
        py::arg("condition"), py::arg("side"), py::arg("curve"), py::arg("data"));
    m.def(
        "evaluate_solution",
        [](Equation eq, Condition cond, Side side, const Curve& c,
           const std::vector<double>& density, const std::vector<cplx>& points, bool native) {
            const int per = eq == Equation::stokes ? 2 : 1;
            const BvpSpec s =
                make_bvp(eq, cond, side, c, std::vector<double>(per * c.size(), 0.0));
            return field(native ? evaluate_solution_native(s, density, points)
                                : evaluate_solution(s, density, points));
        },
        py::arg("equation"), py::arg("condition"), py::arg("side"), py::arg("curve"),
        py::arg("density"), py::arg("points"), py::arg("native") = false);
}
