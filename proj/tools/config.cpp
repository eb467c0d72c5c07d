#include "config.hpp"

#include <fstream>

namespace closelp::cli {

namespace {

cplx point(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw InvalidArgument("expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
void maybe(const json& j, const char* key, T& out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

void maybe_point(const json& j, const char* key, cplx& out)
{
    if (j.contains(key))
        out = point(j.at(key));
}

std::vector<Stokeslet> parse_stokeslets(const json& j)
{
    std::vector<Stokeslet> out;
    for (const auto& s : j)
        out.push_back({point(s.at("position")), point(s.at("force"))});
    return out;
}

} // namespace

json load_config(const std::string& path)
{
    if (path.empty())
        return json::object();
    std::ifstream f(path);
    if (!f)
        throw Error("cannot read config " + path);
    return json::parse(f);
}

CurveSpec parse_curve(const json& j)
{
    CurveSpec c;
    const std::string family = j.value("family", "star");
    if (family == "star") {
        c.shape = parse_star(j);
    } else if (family == "ellipse") {
        c.shape = EllipseShape{j.value("a", 1.0), j.value("b", 1.0)};
    } else {
        throw InvalidArgument("unknown curve family '" + family + "'");
    }
    maybe_point(j, "center", c.placement.center);
    maybe(j, "angle", c.placement.angle);
    maybe(j, "scale", c.placement.scale);
    c.n = j.value("N", 256);
    return c;
}

StarShape parse_star(const json& j)
{
    if (j.value("family", "star") != "star")
        throw InvalidArgument("expected a star curve");
    StarShape s;
    maybe(j, "amplitude", s.amplitude);
    maybe(j, "frequency", s.frequency);
    return s;
}

GridSpec parse_grid(const json& j)
{
    GridSpec g;
    if (j.contains("box")) {
        const auto& b = j.at("box");
        g.xmin = b.at(0);
        g.xmax = b.at(1);
        g.ymin = b.at(2);
        g.ymax = b.at(3);
    }
    maybe(j, "h", g.h);
    if (!(g.h > 0.0))
        throw InvalidArgument("grid spacing h must be positive");
    return g;
}

ReferenceField parse_reference(const json& j)
{
    const std::string kind = j.value("kind", "complex_pole");
    if (kind == "complex_pole") {
        std::vector<cplx> poles;
        for (const auto& p : j.at("poles"))
            poles.push_back(point(p));
        return ReferenceField::complex_pole(poles);
    }
    if (kind == "entire")
        return ReferenceField::entire();
    if (kind == "harmonic_trig")
        return ReferenceField::harmonic_trig(j.value("k", 1.0));
    if (kind == "stokeslets")
        return ReferenceField::stokeslets(parse_stokeslets(j.at("sources")));
    throw InvalidArgument("unknown reference kind '" + kind + "'");
}

CauchyTestConfig parse_cauchy(const json& j)
{
    CauchyTestConfig c;
    maybe(j, "N", c.ns);
    maybe(j, "distances", c.distances);
    maybe(j, "node", c.node);
    if (j.contains("curve"))
        c.star = parse_star(j.at("curve"));
    maybe_point(j, "interior_pole", c.interior_pole);
    maybe_point(j, "exterior_pole", c.exterior_pole);
    maybe_point(j, "anchor", c.anchor);
    return c;
}

LaplaceTableConfig parse_laplace_table(const json& j)
{
    LaplaceTableConfig c;
    maybe(j, "N", c.ns);
    if (j.contains("grid"))
        c.grid = parse_grid(j.at("grid"));
    if (j.contains("curve"))
        c.star = parse_star(j.at("curve"));
    maybe_point(j, "exterior_pole", c.exterior_pole);
    return c;
}

StokesEx1Config parse_stokes1(const json& j)
{
    StokesEx1Config c;
    maybe(j, "gaps", c.gaps);
    maybe(j, "N", c.ns);
    maybe(j, "targets", c.targets);
    return c;
}

StokesEx2Config parse_stokes2(const json& j)
{
    StokesEx2Config c;
    maybe(j, "aspects", c.aspects);
    maybe(j, "N", c.ns);
    maybe(j, "distance", c.distance);
    return c;
}

StokesEx3Config parse_stokes3(const json& j)
{
    StokesEx3Config c;
    maybe(j, "N", c.ns);
    if (j.contains("grid"))
        c.grid = parse_grid(j.at("grid"));
    if (j.contains("curve"))
        c.star = parse_star(j.at("curve"));
    if (j.contains("sources"))
        c.sources = parse_stokeslets(j.at("sources"));
    maybe(j, "field_N", c.field_n);
    return c;
}

StokesEx4Config parse_stokes4(const json& j)
{
    StokesEx4Config c;
    auto& l = c.layout;
    maybe(j, "count", l.count);
    maybe(j, "N", l.n);
    maybe(j, "min_gap", l.min_gap);
    maybe(j, "semi_major_min", l.semi_major_min);
    maybe(j, "semi_major_max", l.semi_major_max);
    maybe(j, "aspect_min", l.aspect_min);
    maybe(j, "aspect_max", l.aspect_max);
    maybe(j, "spacing", l.spacing);
    maybe(j, "seed", l.seed);
    maybe(j, "grid_h", c.grid_h);
    maybe(j, "margin", c.margin);
    maybe(j, "gmres_rtol", c.gmres.rtol);
    maybe(j, "gmres_max_iter", c.gmres.max_iter);
    maybe(j, "force_seed", c.force_seed);
    return c;
}

GridRunConfig parse_grid_run(const json& j)
{
    GridRunConfig c;
    const std::string eq = j.value("equation", "laplace");
    const std::string cond = j.value("condition", "neumann");
    const std::string side = j.value("side", "exterior");
    if (eq != "laplace" && eq != "stokes")
        throw InvalidArgument("equation must be laplace or stokes");
    if (cond != "dirichlet" && cond != "neumann")
        throw InvalidArgument("condition must be dirichlet or neumann");
    if (side != "interior" && side != "exterior")
        throw InvalidArgument("side must be interior or exterior");
    c.spec.equation = eq == "laplace" ? Equation::laplace : Equation::stokes;
    c.spec.condition = cond == "dirichlet" ? Condition::dirichlet : Condition::neumann;
    c.spec.side = side == "interior" ? Side::interior : Side::exterior;

    json curve = j.value("curve", json{{"family", "star"}, {"amplitude", 0.3}, {"frequency", 5}, {"N", 240}});
    const CurveSpec spec = parse_curve(curve);
    c.spec.curves = {Curve::analytic(spec)};
    c.classify_curve = spec;
    c.classify_curve.n = std::max(spec.n, j.value("classify_N", 256));
    if (j.contains("reference"))
        c.reference = parse_reference(j.at("reference"));
    if (j.contains("grid"))
        c.grid = parse_grid(j.at("grid"));
    maybe(j, "native", c.native);
    if (j.contains("color_range")) {
        c.color_lo = j.at("color_range").at(0);
        c.color_hi = j.at("color_range").at(1);
    }
    if (j.contains("check")) {
        const auto& k = j.at("check");
        maybe(k, "u", c.check_u);
        maybe(k, "grad", c.check_grad);
        maybe(k, "velocity", c.check_velocity);
        maybe(k, "fraction", c.check_fraction);
    }
    return c;
}

} // namespace closelp::cli
