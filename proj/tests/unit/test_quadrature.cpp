#include <cmath>
#include <numbers>

#include "doctest.h"

#include "curvedis/quadrature_curves.hpp"

using namespace curvedis;

namespace {

constexpr double kPi = std::numbers::pi;

double dev_from_delta(const SpectralMeasure& m)
{
    const std::size_t z = zero_frequency_position(m.manifold, m.degree);
    double e = 0.0;
    for (std::size_t k = 0; k < m.coeffs.size(); ++k) e = std::max(e, std::abs(m.coeffs[k] - (k == z ? 1.0 : 0.0)));
    return e;
}

double max_diff(const SpectralMeasure& a, const SpectralMeasure& b)
{
    double e = 0.0;
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) e = std::max(e, std::abs(a.coeffs[k] - b.coeffs[k]));
    return e;
}

} // namespace

TEST_CASE("euler circuit")
{
    const auto c = euler_circuit(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}});
    REQUIRE(c.size() == 4);
    std::vector<int> seen(4, 0);
    for (const auto& [e, back] : c) seen[e] += 1;
    CHECK(seen == std::vector<int>{1, 1, 1, 1});
    CHECK_THROWS_AS(euler_circuit(3, {{0, 1}, {1, 2}}), Error);
    CHECK_THROWS_AS(euler_circuit(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}), Error);
    try {
        euler_circuit(2, {{0, 1}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GraphInvalid);
    }
}

TEST_CASE("torus curve shape")
{
    const AnalyticCurve c = torus_quadrature_curve(2, 2);
    CHECK(c.segments.size() == 18);   // 6 unit circles of 3 edges
    CHECK(c.length() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(c.lipschitz() == doctest::Approx(6.0).epsilon(1e-14));
    for (const auto& s : c.segments) CHECK(s.speed() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_NOTHROW(c.validate());

    const AnalyticCurve c0 = torus_quadrature_curve(2, 0);
    CHECK(c0.segments.size() == 2);
    CHECK(c0.lipschitz() == doctest::Approx(2.0));

    const AnalyticCurve c3 = torus_quadrature_curve(3, 2);
    CHECK(c3.lipschitz() == doctest::Approx(27.0));   // d n^{d-1}
    CHECK_NOTHROW(c3.validate());
}

TEST_CASE("torus curve exactness")
{
    for (int r : {0, 2, 4, 8}) CHECK(dev_from_delta(analytic_line_coefficients(torus_quadrature_curve(2, r), r)) < 1e-12);
    CHECK(dev_from_delta(analytic_line_coefficients(torus_quadrature_curve(3, 3), 3)) < 1e-12);
    // one degree too many is not integrated exactly
    CHECK(dev_from_delta(analytic_line_coefficients(torus_quadrature_curve(2, 2), 3)) > 0.1);
    // quadrature along the segments agrees with the closed form
    const AnalyticCurve c = torus_quadrature_curve(2, 3);
    const CurveDensity one = constant_density(c);
    CHECK(max_diff(analytic_line_coefficients(c, 5), analytic_line_coefficients(c, 5, &one)) < 1e-12);
}

TEST_CASE("sphere curve shape")
{
    const AnalyticCurve c2 = sphere2_quadrature_curve(2);
    CHECK(c2.circles.size() == 4);
    CHECK_NOTHROW(c2.validate());
    const AnalyticCurve c0 = sphere2_quadrature_curve(0);
    CHECK(c0.circles.size() == 2);   // the equator in both orientations
    for (int r : {1, 3, 6}) {
        const AnalyticCurve c = sphere2_quadrature_curve(r);
        CHECK_NOTHROW(c.validate());
        double mass = 0.0;
        for (const auto& ci : c.circles) mass += ci.mass;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
        // each circle's arcs add up to one full turn
        std::vector<double> turn(c.circles.size(), 0.0);
        for (const auto& s : c.segments) {
            const CircleInfo& ci = c.circles[s.circle];
            turn[s.circle] += std::abs(s.th1 - s.th0);
            CHECK(s.speed() == doctest::Approx(2.0 * kPi * ci.radius / ci.mass).epsilon(1e-10));
            CHECK(s.eval(0.37).norm() == doctest::Approx(1.0).epsilon(1e-14));
        }
        for (double t : turn) CHECK(t == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    }
}

TEST_CASE("sphere curve exactness")
{
    CHECK(dev_from_delta(circle_rule_coefficients(sphere2_quadrature_curve(0), 0, 2)) < 1e-14);
    for (int r : {1, 2, 4, 6}) {
        const AnalyticCurve c = sphere2_quadrature_curve(r);
        CHECK(dev_from_delta(circle_rule_coefficients(c, r, 4 * r + 2)) < 1e-10);
        // arc-by-arc Gauss-Legendre gives the same numbers
        CHECK(dev_from_delta(analytic_line_coefficients(c, r)) < 1e-10);
    }
}

TEST_CASE("curve with density")
{
    for (int d : {2, 3})
        for (int r : {0, 2, 5}) {
            const auto [c, rho] = sphere_d_curve_with_density(d, r);
            CHECK(rho.integral() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK_NOTHROW(c.validate());
            for (const auto& s : c.segments) {
                CHECK((s.eval(0.0) - s.eval(1.0)).norm() < 1e-14);
                CHECK(s.eval(0.0)[0] == doctest::Approx(1.0));
            }
            for (int q = 0; q <= 100; ++q) CHECK(rho(q / 100.0) >= 0.0);
        }
    // int x_1^2 over S^3 is 1/4
    const auto [c, rho] = sphere_d_curve_with_density(3, 2);
    double s = 0.0, mass = 0.0;
    integrate_curve(c, &rho, 24, [&](const VecX& a, double w) {
        s += w * a[0] * a[0];
        mass += w;
    });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s == doctest::Approx(0.25).epsilon(1e-12));
    // degree-2 exactness on S^2: x1^2, x2^2, x1 x2
    const auto [c2, rho2] = sphere_d_curve_with_density(2, 2);
    double m11 = 0.0, m22 = 0.0, m12 = 0.0;
    integrate_curve(c2, &rho2, 24, [&](const VecX& a, double w) {
        m11 += w * a[1] * a[1];
        m22 += w * a[2] * a[2];
        m12 += w * a[1] * a[2];
    });
    CHECK(m11 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(m22 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(m12) < 1e-12);
    CHECK_THROWS_AS(sphere_d_curve_with_density(4, 2), Error);
}

TEST_CASE("sphere curve with density integrates harmonics")
{
    for (int r : {1, 3, 4}) {
        const auto [c, rho] = sphere_d_curve_with_density(2, r);
        CHECK(dev_from_delta(analytic_line_coefficients(c, r, &rho)) < 1e-10);
    }
}

TEST_CASE("so3 lift")
{
    for (int r : {0, 1, 2}) {
        const auto [c, rho] = so3_quadrature_curve(r);
        CHECK(c.manifold() == ManifoldId::so3());
        CHECK(dev_from_delta(analytic_line_coefficients(c, r, &rho)) < 1e-8);
    }
    const auto [c, rho] = so3_quadrature_curve(2);
    const auto [c4, rho4] = sphere_d_curve_with_density(3, 4);
    for (int q = 0; q <= 50; ++q) CHECK(rho(q / 50.0) == rho4(q / 50.0));
    CHECK(c.segments.size() == c4.segments.size());
}

TEST_CASE("reparametrization")
{
    const AnalyticCurve t = torus_quadrature_curve(2, 2);
    const Reparametrized id = reparametrize_constant_speed(t, constant_density(t));
    for (int q = 0; q <= 20; ++q) {
        CHECK(id.g(q / 20.0) == doctest::Approx(q / 20.0).epsilon(1e-14));
        CHECK(id.g_inverse(q / 20.0) == doctest::Approx(q / 20.0).epsilon(1e-12));
    }

    for (int r = 1; r <= 4; ++r) {
        const auto [c, rho] = sphere_d_curve_with_density(2, r);
        const Reparametrized rp = reparametrize_constant_speed(c, rho);
        CHECK(max_diff(rp.lebesgue_coefficients(r), analytic_line_coefficients(c, r, &rho)) < 1e-8);
        CHECK(rp.g(0.0) == 0.0);
        CHECK(std::abs(rp.g(1.0) - 1.0) < 1e-12);
        double prev = -1.0;
        for (int q = 0; q <= 400; ++q) {
            const double s = q / 400.0, tq = rp.g_inverse(s);
            CHECK(std::abs(rp.g(tq) - s) < 1e-12);
            CHECK(tq > prev);
            prev = tq;
        }
    }

    CurveDensity gap;
    gap.pieces.push_back({0.0, 0.5, [](double) { return 2.0; }});
    gap.pieces.push_back({0.5, 1.0, [](double) { return 0.0; }});
    try {
        Reparametrized bad(t, gap);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotInvertible);
    }
}

TEST_CASE("discretize")
{
    const AnalyticCurve t = torus_quadrature_curve(2, 4);
    for (int n : {16, 50, 128}) {
        const DiscreteCurve x = discretize(t, n);
        CHECK(x.size() == std::size_t(n));
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(distance(x[i], x.prev(i)) <= t.length() / n + 1e-12);
            // on the grid lines
            const double a = x[i].c[0] * 5.0, b = x[i].c[1] * 5.0;
            CHECK(std::min(std::abs(a - std::round(a)), std::abs(b - std::round(b))) < 1e-12);
        }
    }
    const AnalyticCurve s = sphere2_quadrature_curve(3);
    const DiscreteCurve xs = discretize(s, 200);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(distance(xs[i], xs.prev(i)) <= s.lipschitz() / 200 + 1e-12);
    CHECK_THROWS_AS(discretize(t, 1), Error);

    // empirical coefficients approach the line coefficients under doubling
    const SpectralMeasure line = analytic_line_coefficients(t, 4);
    double prev = 1e300;
    for (int n : {64, 128, 256, 512}) {
        const double e = max_diff(empirical_coefficients(discretize(t, n), 4), line);
        CHECK(e < prev);
        prev = e;
    }
}
