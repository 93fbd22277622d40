#include "curvedis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "curvedis/quadrature_curves.hpp"

namespace curvedis {

namespace {

double max_nonzero_dev(const SpectralMeasure& m)
{
    const std::size_t z = zero_frequency_position(m.manifold, m.degree);
    double e = 0.0;
    for (std::size_t k = 0; k < m.coeffs.size(); ++k) e = std::max(e, std::abs(m.coeffs[k] - (k == z ? 1.0 : 0.0)));
    return e;
}

DiscreteCurve random_curve(const ManifoldId& m, int n, Rng& rng)
{
    DiscreteCurve c{m, {}};
    for (int i = 0; i < n; ++i) c.points.push_back(random_point(m, rng));
    return c;
}

VerifyReport quadrature_suite()
{
    VerifyReport rep{"quadrature", {}};
    for (int r : {2, 4, 8}) {
        const double e = max_nonzero_dev(analytic_line_coefficients(torus_quadrature_curve(2, r), r));
        rep.checks.push_back({"torus2 r=" + std::to_string(r), e, 1e-12, e < 1e-12});
    }
    for (int r : {2, 4, 6}) {
        const double e = max_nonzero_dev(circle_rule_coefficients(sphere2_quadrature_curve(r), r, 4 * r + 2));
        rep.checks.push_back({"sphere2 r=" + std::to_string(r), e, 1e-10, e < 1e-10});
    }
    for (int r : {1, 2}) {
        const auto [c, rho] = so3_quadrature_curve(r);
        const double e = max_nonzero_dev(analytic_line_coefficients(c, r, &rho));
        rep.checks.push_back({"so3 r=" + std::to_string(r), e, 1e-8, e < 1e-8});
    }
    return rep;
}

VerifyReport gradient_suite()
{
    VerifyReport rep{"gradient", {}};
    Rng rng(0);
    const ManifoldId ms[] = {ManifoldId::torus(2), ManifoldId::sphere2(), ManifoldId::so3(), ManifoldId::grass24()};
    for (const auto& m : ms) {
        const int r = m.kind() == ManifoldKind::Grass24 ? 3 : 4;
        const DiscreteCurve x = random_curve(m, 8, rng);
        // target: empirical measure of another random configuration
        const SpectralMeasure mu = empirical_coefficients(random_curve(m, 5, rng), r);
        double min_speed = 1e300;
        for (std::size_t i = 0; i < x.size(); ++i) min_speed = std::min(min_speed, 8.0 * distance(x.prev(i), x[i]));
        for (bool active : {false, true}) {
            const Objective f(make_objective_config(mu, active ? 0.5 * min_speed : 1e6, active ? 0.3 : 0.0));
            const double e = gradient_fd_error(f, x, 8, 1e-6, rng);
            rep.checks.push_back({m.tag() + (active ? " penalty active" : " lambda=0"), e, 1e-5, e < 1e-5});
        }
    }
    return rep;
}

VerifyReport kernel_suite()
{
    VerifyReport rep{"kernel", {}};
    Rng rng(0);
    const std::pair<ManifoldId, int> cases[] = {{ManifoldId::sphere2(), 1000}, {ManifoldId::so3(), 500}};
    for (const auto& [m, deg] : cases) {
        double e = 0.0, et = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Point x = random_point(m, rng), y = random_point(m, rng);
            e = std::max(e, std::abs(kernel_series(m, x, y, deg) - kernel_closed_form(m, x, y)));
            if (i < 10) et = std::max(et, std::abs(kernel_series(m, x, y, 6) - kernel_truncated(m, x, y, 6)));
        }
        rep.checks.push_back({m.tag() + " series degree " + std::to_string(deg) + " vs closed form", e, 1e-3, e < 1e-3});
        rep.checks.push_back({m.tag() + " eigenfunction sum vs series, degree 6", et, 1e-12, et < 1e-12});
    }
    return rep;
}

VerifyReport gamma_suite()
{
    VerifyReport rep{"gamma-proxy", {}};
    const int kernel_degree = 8;
    const AnalyticCurve g = torus_quadrature_curve(2, 4);
    const ManifoldId m = ManifoldId::torus(2);
    const ObjectiveConfig cfg = make_objective_config(uniform_measure(m, kernel_degree), 1.0, 0.0);
    const double line = discrepancy_sq(analytic_line_coefficients(g, kernel_degree), cfg);
    double prev = 1e300;
    bool decreasing = true;
    for (int n : {64, 128, 256, 512}) {
        const double gap = std::abs(discrepancy_sq(empirical_coefficients(discretize(g, n), kernel_degree), cfg) - line);
        decreasing = decreasing && gap < prev;
        prev = gap;
        rep.checks.push_back({"gap N=" + std::to_string(n), gap, 0.0, true});
    }
    rep.checks.push_back({"gap decreases under doubling", decreasing ? 1.0 : 0.0, 1.0, decreasing});
    rep.checks.push_back({"gap at N=512", prev, 1e-4, prev < 1e-4});
    return rep;
}

} // namespace

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

std::string VerifyReport::to_json() const
{
    nlohmann::json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
    return j.dump(1) + "\n";
}

double gradient_fd_error(const Objective& f, const DiscreteCurve& x, int directions, double h, Rng& rng)
{
    const Tangents g = f.gradient(x);
    double worst = 0.0;
    for (int k = 0; k < directions; ++k) {
        Tangents v;
        for (const auto& p : x.points) v.push_back(random_tangent(p, rng));
        const double an = curve_inner(x, g, v);
        const double fd = (f.value(curve_step(x, v, h)) - f.value(curve_step(x, v, -h))) / (2.0 * h);
        worst = std::max(worst, std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-12}));
    }
    return worst;
}

std::vector<std::string> verify_suites() { return {"quadrature", "gradient", "kernel", "gamma-proxy"}; }

VerifyReport run_verify(const std::string& suite)
{
    if (suite == "quadrature") return quadrature_suite();
    if (suite == "gradient") return gradient_suite();
    if (suite == "kernel") return kernel_suite();
    if (suite == "gamma-proxy") return gamma_suite();
    throw Error(ErrorKind::InvalidArgument, "unknown verification suite '" + suite + "'");
}

} // namespace curvedis
