#include "doctest.h"

#include "config.hpp"

using namespace closelp;
using namespace closelp::cli;

TEST_CASE("curve descriptors")
{
    const CurveSpec e = parse_curve(json::parse(
        R"({"family": "ellipse", "a": 2, "b": 0.5, "center": [1, -1], "angle": 0.3, "N": 64})"));
    REQUIRE(std::holds_alternative<EllipseShape>(e.shape));
    CHECK(std::get<EllipseShape>(e.shape).a == 2.0);
    CHECK(e.placement.center == cplx(1.0, -1.0));
    CHECK(e.placement.angle == 0.3);
    CHECK(e.n == 64);

    const CurveSpec s = parse_curve(json::parse(R"({"amplitude": 0.2})"));
    REQUIRE(std::holds_alternative<StarShape>(s.shape));
    CHECK(std::get<StarShape>(s.shape).amplitude == 0.2);
    CHECK(std::get<StarShape>(s.shape).frequency == 5);

    CHECK_THROWS_AS(parse_curve(json::parse(R"({"family": "blob"})")), InvalidArgument);
    CHECK_THROWS_AS(parse_star(json::parse(R"({"family": "ellipse"})")), InvalidArgument);
}

TEST_CASE("grids")
{
    const GridSpec g = parse_grid(json::parse(R"({"box": [-1, 2, -3, 4], "h": 0.25})"));
    CHECK(g.xmin == -1.0);
    CHECK(g.ymax == 4.0);
    CHECK(g.h == 0.25);
    CHECK(parse_grid(json::object()).h == 0.01);
    CHECK_THROWS_AS(parse_grid(json::parse(R"({"h": 0})")), InvalidArgument);
    CHECK_THROWS_AS(parse_grid(json::parse(R"({"h": -1})")), InvalidArgument);
}

TEST_CASE("references")
{
    const auto p = parse_reference(json::parse(R"({"kind": "complex_pole", "poles": [[0.1, 0.3]]})"));
    CHECK(p.kind() == ReferenceKind::complex_pole);
    CHECK(p.poles().at(0) == cplx(0.1, 0.3));
    const auto s = parse_reference(json::parse(
        R"({"kind": "stokeslets", "sources": [{"position": [0, 0], "force": [1, 0]}]})"));
    CHECK(s.is_stokes());
    CHECK(s.sources().size() == 1);
    CHECK(parse_reference(json::parse(R"({"kind": "entire"})")).kind() == ReferenceKind::entire);
    CHECK_THROWS_AS(parse_reference(json::parse(R"({"kind": "magic"})")), InvalidArgument);
}

TEST_CASE("run sections")
{
    const auto c = parse_cauchy(json::parse(R"({"N": [100, 200], "interior_pole": [1.2, 1.0]})"));
    CHECK(c.ns == std::vector<int>{100, 200});
    CHECK(c.interior_pole == cplx(1.2, 1.0));
    CHECK(c.exterior_pole == cplx(0.1, 0.5));

    const auto t = parse_laplace_table(json::parse(R"({"N": [100], "grid": {"h": 0.05}})"));
    CHECK(t.ns == std::vector<int>{100});
    CHECK(t.grid.h == 0.05);

    CHECK(parse_stokes1(json::parse(R"({"gaps": [0.5]})")).gaps == std::vector<double>{0.5});
    CHECK(parse_stokes2(json::parse(R"({"aspects": [3]})")).aspects == std::vector<double>{3.0});
    CHECK(parse_stokes3(json::parse(R"({"field_N": 0})")).field_n == 0);
    const auto e4 = parse_stokes4(json::parse(R"({"count": 3, "N": 64, "seed": 9})"));
    CHECK(e4.layout.count == 3);
    CHECK(e4.layout.n == 64);
    CHECK(e4.layout.seed == 9u);
}

TEST_CASE("grid run")
{
    const auto d = parse_grid_run(json::object());
    CHECK(d.spec.equation == Equation::laplace);
    CHECK(d.spec.condition == Condition::neumann);
    CHECK(d.spec.side == Side::exterior);
    CHECK(d.spec.curves.at(0).size() == 240);

    const auto s = parse_grid_run(json::parse(R"({
        "equation": "stokes", "condition": "dirichlet", "side": "interior",
        "curve": {"family": "ellipse", "a": 1.5, "b": 1, "N": 96},
        "reference": {"kind": "stokeslets", "sources": [{"position": [3, 0], "force": [1, 1]}]},
        "color_range": [-14, -2], "check": {"velocity": 1e-9}})"));
    CHECK(s.spec.equation == Equation::stokes);
    CHECK(s.spec.side == Side::interior);
    CHECK(s.color_lo == -14.0);
    CHECK(s.check_velocity == 1e-9);
    CHECK_THROWS_AS(parse_grid_run(json::parse(R"({"side": "inside"})")), InvalidArgument);
}
