#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "curvedis/experiment.hpp"
#include "curvedis/measures.hpp"
#include "curvedis/quadrature_curves.hpp"

using namespace curvedis;

namespace {

const double kPi = std::numbers::pi;

std::size_t nonzero(const SpectralMeasure& mu)
{
    return std::count_if(mu.coeffs.begin(), mu.coeffs.end(), [](cplx c) { return c != 0.0; });
}

double max_diff(const SpectralMeasure& a, const SpectralMeasure& b)
{
    double e = 0.0;
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) e = std::max(e, std::abs(a.coeffs[k] - b.coeffs[k]));
    return e;
}

Image test_image(int h, int w)
{
    Image img{h, w, {}};
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) img.pixels.push_back(1.0 + std::sin(0.7 * i) * std::cos(0.3 * j + 0.2) + 0.1 * ((i * 7 + j * 3) % 5));
    return img;
}

DiscreteCurve torus1(std::vector<double> xs)
{
    DiscreteCurve c{ManifoldId::torus(1), {}};
    for (double x : xs) c.points.push_back(Point::torus(std::span<const double>(&x, 1)));
    return c;
}

} // namespace

TEST_CASE("uniform measures")
{
    const SpectralMeasure t = uniform_measure(ManifoldId::torus(2), 4);
    CHECK(t.coeffs.size() == 81);
    CHECK(nonzero(t) == 1);
    CHECK(t.at({{0, 0}}) == 1.0);
    const SpectralMeasure g = uniform_measure(ManifoldId::grass24(), 2);
    CHECK(nonzero(g) == 1);
    CHECK(g.at({{0, 0, 1}}) == 1.0);
    const SpectralMeasure s = uniform_measure(ManifoldId::sphere2(), 3);
    CHECK(s.coeffs.size() == 16);
    CHECK(s.coeffs[0] == 1.0);
    CHECK(nonzero(s) == 1);
}

TEST_CASE("torus image examples")
{
    Image flat{6, 8, std::vector<double>(48, 0.3)};
    CHECK(max_diff(from_torus_image(flat, 2), uniform_measure(ManifoldId::torus(2), 2)) < 1e-15);
    Image delta{4, 4, std::vector<double>(16, 0.0)};
    delta.pixels[0] = 1.0;
    for (cplx c : from_torus_image(delta, 1).coeffs) CHECK(std::abs(c - 1.0) < 1e-15);
    CHECK_THROWS_AS(from_torus_image(Image{4, 4, std::vector<double>(16, 0.0)}, 1), Error);
    CHECK_THROWS_AS(from_torus_image(delta, 2), Error);
}

TEST_CASE("half period shift negates odd frequencies")
{
    const Image img = test_image(12, 16);
    Image shifted = img;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 16; ++j) shifted.pixels[i * 16 + (j + 8) % 16] = img(i, j);
    const SpectralMeasure a = from_torus_image(img, 4), b = from_torus_image(shifted, 4);
    const auto idx = enumerate_frequencies(a.manifold, 4);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const double sign = idx[k].parts[0] % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(b.coeffs[k] - sign * a.coeffs[k]) < 1e-12);
    }
}

TEST_CASE("image orientation and inversion")
{
    // a bright column at j = W/4 sits at first coordinate 1/4
    Image img{8, 8, std::vector<double>(64, 0.0)};
    for (int i = 0; i < 8; ++i) img.pixels[i * 8 + 2] = 1.0;
    const SpectralMeasure mu = from_torus_image(img, 1);
    CHECK(std::abs(mu.at({{1, 0}}) - std::polar(1.0, -2 * kPi * 0.25)) < 1e-14);
    CHECK(std::abs(mu.at({{0, 1}})) < 1e-14);
    const SpectralMeasure inv = from_torus_image(img, 1, true);
    // the inverted image is the complement: mass 7/8 spread over the other columns
    CHECK(std::abs(inv.at({{1, 0}}) - (0.0 - mu.at({{1, 0}}) / 8.0) / (7.0 / 8.0)) < 1e-14);
}

TEST_CASE("conjugate symmetry of real densities")
{
    const SpectralMeasure mu = from_torus_image(test_image(20, 18), 6);
    const auto idx = enumerate_frequencies(mu.manifold, 6);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const FrequencyIndex neg{{-idx[k].parts[0], -idx[k].parts[1]}};
        CHECK(mu.at(neg) == std::conj(mu.coeffs[k]));
    }
}

TEST_CASE("sphere grid")
{
    SphereGrid flat;
    flat.values.assign(180 * 360, 2.5);
    const SpectralMeasure u = from_sphere_grid(flat, 6);
    CHECK(u.coeffs[0] == 1.0);
    // the sin-weighted Riemann sum is O(k^2 / 180^2) off for constants
    CHECK(max_diff(u, uniform_measure(ManifoldId::sphere2(), 6)) < 1e-4);
    // exact value of that sum for the zonal k = 2 harmonic: sum_i sin(m i pi / n) = cot(m pi / 2n) for odd m
    const double s1 = 1.0 / std::tan(kPi / 360.0), s3 = 1.0 / std::tan(3.0 * kPi / 360.0);
    const double zonal2 = std::sqrt(5.0) * (1.5 * 0.25 * (s1 + s3) - 0.5 * s1) / s1;
    CHECK(std::abs(u.at({{2, 1}}) - zonal2) < 1e-12);
    CHECK(std::abs(zonal2) > 1e-6);
    // 1 + a Y_1 (zonal) synthesized on the grid and analyzed back
    const double a = 0.4;
    SphereGrid g;
    for (int i = 1; i <= 180; ++i)
        for (int j = 1; j <= 360; ++j) g.values.push_back(1.0 + a * std::sqrt(3.0) * sphere_grid_point(g, i, j)[2]);
    const SpectralMeasure mu = from_sphere_grid(g, 3);
    CHECK(mu.coeffs[0] == 1.0);
    CHECK(std::abs(mu.at({{1, 1}}) - a) < 1e-3);
    SphereGrid zero;
    zero.values.assign(180 * 360, 0.0);
    CHECK_THROWS_AS(from_sphere_grid(zero, 2), Error);
    CHECK_THROWS_AS(from_sphere_grid(flat, 181), Error);
}

TEST_CASE("gaussian mixture")
{
    const SpectralMeasure one = gaussian_mixture_torus({{0.0, 0.0}}, 30000.0, 512, 8);
    CHECK(one.coeffs[zero_frequency_position(one.manifold, 8)] == 1.0);
    const auto idx = enumerate_frequencies(one.manifold, 8);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        CHECK(std::abs(one.coeffs[k].imag()) < 1e-14);
        CHECK(std::abs(one.at({{-idx[k].parts[0], -idx[k].parts[1]}}) - one.coeffs[k]) < 1e-14);
    }
    // a smooth bump resolved by the grid: the lattice sum does not depend on the offset
    const std::vector<double> p{0.13, -0.31}, q{-0.42, 0.05};
    const SpectralMeasure a = gaussian_mixture_torus({p}, 200.0, 64, 6), b = gaussian_mixture_torus({q}, 200.0, 64, 6);
    const SpectralMeasure ab = gaussian_mixture_torus({p, q}, 200.0, 64, 6);
    for (std::size_t k = 0; k < ab.coeffs.size(); ++k) CHECK(std::abs(ab.coeffs[k] - 0.5 * (a.coeffs[k] + b.coeffs[k])) < 1e-10);
    CHECK_THROWS_AS(gaussian_mixture_torus({}, 1.0, 16, 2), Error);
    CHECK_THROWS_AS(gaussian_mixture_torus({p}, 1.0, 10, 5), Error);
}

TEST_CASE("so3 doughnut")
{
    const SpectralMeasure mu = so3_doughnut(6);
    CHECK(mu.at({{0, 0, 0}}) == 1.0);
    CHECK(mu.at({{1, 0, 0}}) == 1.5);
    CHECK(mu.at({{2, 0, 0}}) == 0.0);
    CHECK(mu.at({{4, 0, 0}}) == 0.0);
    CHECK(mu.at({{6, 0, 0}}) == 0.0);
    CHECK(mu.at({{3, 0, 0}}).real() == doctest::Approx(-0.5 - 0.375));
    CHECK(nonzero(mu) == 4);
}

TEST_CASE("doughnut haar coefficients")
{
    // Haar measure on beta in [0, pi/2] has density sin(beta) there; integrate phi_(k,0,0) at Ry(beta)
    const int r = 7;
    const SpectralMeasure mu = so3_doughnut_haar(r);
    const GaussLegendre gl = gauss_legendre(24);
    for (int k = 0; k <= r; ++k) {
        cplx s = 0.0;
        for (int i = 0; i < 24; ++i) {
            const double t = 0.5 * (gl.nodes[i] + 1.0);
            const Point x = Point::so3(Eigen::AngleAxisd(std::acos(t), Vec3::UnitY()).toRotationMatrix());
            s += 0.5 * gl.weights[i] * std::conj(eigenfunction(ManifoldId::so3(), {{k, 0, 0}}, x));
        }
        CHECK(std::abs(mu.at({{k, 0, 0}}) - s) < 1e-13);
    }
    CHECK(nonzero(mu) == 5);
}

TEST_CASE("empirical coefficients")
{
    Rng rng(0);
    const Point x = random_point(ManifoldId::torus(2), rng);
    for (cplx c : empirical_coefficients(DiscreteCurve{ManifoldId::torus(2), {x}}, 3).coeffs) CHECK(std::abs(c) == doctest::Approx(1.0));
    const SpectralMeasure e = empirical_coefficients(torus1({0.0, 0.25, 0.5, 0.75}), 4);
    CHECK(std::abs(e.at({{1}})) < 1e-15);
    CHECK(std::abs(e.at({{4}}) - 1.0) < 1e-14);
    DiscreteCurve s{ManifoldId::sphere2(), {}};
    for (int i = 0; i < 7; ++i) s.points.push_back(random_point(ManifoldId::sphere2(), rng));
    const SpectralMeasure es = empirical_coefficients(s, 4);
    CHECK(es.coeffs[0] == 1.0);
    std::reverse(s.points.begin(), s.points.end());
    std::swap(s.points[1], s.points[4]);
    CHECK(max_diff(es, empirical_coefficients(s, 4)) < 1e-14);
}

TEST_CASE("line coefficients")
{
    const AnalyticCurve g = torus_quadrature_curve(2, 2);
    DiscreteCurve poly{ManifoldId::torus(2), {}};
    for (const auto& seg : g.segments) poly.points.push_back(g.to_point(seg.a));
    const SpectralMeasure nu = curve_line_coefficients(poly, 2);
    CHECK(max_diff(nu, uniform_measure(ManifoldId::torus(2), 2)) < 1e-12);
    CHECK(nu.coeffs[zero_frequency_position(nu.manifold, 2)] == 1.0);
    // tilted great circle
    DiscreteCurve gc{ManifoldId::sphere2(), {}};
    const Vec3 a = Vec3(1, 2, 0.5).normalized(), b = a.cross(Vec3(0.3, -1, 2)).normalized();
    for (int i = 0; i < 7; ++i) {
        const double t = 2 * kPi * i / 7;
        gc.points.push_back(Point::sphere2(std::cos(t) * a + std::sin(t) * b));
    }
    const SpectralMeasure c = curve_line_coefficients(gc, 5);
    CHECK(c.coeffs[0] == 1.0);
    for (int k = 1; k <= 5; k += 2)
        for (int l = 0; l < 2 * k + 1; ++l) CHECK(std::abs(c.coeffs[k * k + l]) < 1e-10);
    DiscreteCurve rep = gc;
    rep.points.insert(rep.points.begin() + 2, rep.points[1]);
    CHECK_THROWS_AS(curve_line_coefficients(rep, 2), Error);
}

TEST_CASE("empirical measures of finer samplings approach the line integral")
{
    const DiscreteCurve c = experiment_initial_curve("sphere2", 12);
    const SpectralMeasure line = curve_line_coefficients(c, 6);
    double prev = 0.0;
    for (int n : {64, 128, 256}) {
        const double d = max_diff(empirical_coefficients(resample(c, n), 6), line);
        if (n > 64) CHECK(d < 0.55 * prev);
        CHECK(d * n < 2.0);
        prev = d;
    }
}

TEST_CASE("resize and validate")
{
    const SpectralMeasure mu = from_torus_image(test_image(16, 16), 3);
    const SpectralMeasure up = mu.resized(5), down = up.resized(3);
    CHECK(up.coeffs.size() == 121);
    CHECK(up.at({{5, 5}}) == 0.0);
    CHECK(up.at({{2, -3}}) == mu.at({{2, -3}}));
    CHECK(max_diff(down, mu) == 0.0);
    mu.validate();
    SpectralMeasure bad = mu;
    bad.coeffs[0] = 2.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = mu;
    bad.coeffs[3] = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    for (int r = 0; r <= 6; ++r) so3_doughnut(r).validate();
}
