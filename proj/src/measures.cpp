#include "curvedis/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvedis/basis.hpp"
#include "curvedis/kernels.hpp"

namespace curvedis {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

void normalize(SpectralMeasure& mu)
{
    const std::size_t z = zero_frequency_position(mu.manifold, mu.degree);
    const cplx c = mu.coeffs[z];
    if (std::abs(c) == 0.0 || !std::isfinite(std::abs(c))) throw Error(ErrorKind::InvalidArgument, "measure has zero total mass");
    for (auto& v : mu.coeffs) v /= c;
    mu.coeffs[z] = 1.0;
}

void check_density(const std::vector<double>& v)
{
    bool any = false;
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "density samples must be finite and nonnegative");
        any = any || x > 0.0;
    }
    if (!any) throw Error(ErrorKind::InvalidArgument, "density samples are all zero");
}

} // namespace

std::size_t zero_frequency_position(const ManifoldId& m, int r)
{
    if (m.is_torus()) return static_cast<std::size_t>(frequency_position(m, r, {std::vector<int>(m.torus_dim(), 0)}));
    return 0;
}

cplx SpectralMeasure::at(const FrequencyIndex& idx) const
{
    const std::ptrdiff_t p = frequency_position(manifold, degree, idx);
    return p < 0 ? cplx(0.0) : coeffs[p];
}

SpectralMeasure SpectralMeasure::resized(int r) const
{
    if (r == degree) return *this;
    SpectralMeasure out{manifold, r, std::vector<cplx>(frequency_count(manifold, r), 0.0)};
    const auto idx = enumerate_frequencies(manifold, r);
    for (std::size_t i = 0; i < idx.size(); ++i) out.coeffs[i] = at(idx[i]);
    return out;
}

void SpectralMeasure::validate(double tol) const
{
    if (coeffs.size() != frequency_count(manifold, degree))
        throw Error(ErrorKind::InvalidArgument, "coefficient count does not match the degree");
    if (std::abs(coeffs[zero_frequency_position(manifold, degree)] - 1.0) > tol)
        throw Error(ErrorKind::InvalidArgument, "zero-frequency coefficient is not 1");
    const auto idx = enumerate_frequencies(manifold, degree);
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (std::abs(coeffs[i]) > sup_norm_bound(manifold, idx[i]) * (1.0 + tol) + tol)
            throw Error(ErrorKind::InvalidArgument, "coefficient exceeds the eigenfunction sup norm");
}

SpectralMeasure uniform_measure(const ManifoldId& m, int r)
{
    SpectralMeasure mu{m, r, std::vector<cplx>(frequency_count(m, r), 0.0)};
    mu.coeffs[zero_frequency_position(m, r)] = 1.0;
    return mu;
}

SpectralMeasure from_torus_image(const Image& img, int r, bool invert)
{
    const int h = img.height, w = img.width;
    if (h <= 0 || w <= 0 || img.pixels.size() != static_cast<std::size_t>(h) * w)
        throw Error(ErrorKind::InvalidArgument, "malformed image");
    if (r < 0 || 2 * r >= std::min(h, w)) throw Error(ErrorKind::InvalidArgument, "degree too large for the image size (aliasing)");
    std::vector<double> p = img.pixels;
    if (invert) {
        const double mx = *std::max_element(p.begin(), p.end());
        for (double& v : p) v = mx - v;
    }
    check_density(p);
    const int nk = 2 * r + 1;
    // t[i][k1] = sum_j p_ij e^{-2 pi i k1 j / W}
    std::vector<cplx> t(static_cast<std::size_t>(h) * nk, 0.0);
    for (int i = 0; i < h; ++i)
        for (int a = 0; a < nk; ++a) {
            cplx s = 0.0;
            for (int j = 0; j < w; ++j) {
                const double v = p[static_cast<std::size_t>(i) * w + j];
                if (v != 0.0) s += v * std::polar(1.0, -2.0 * kPi * (a - r) * j / w);
            }
            t[static_cast<std::size_t>(i) * nk + a] = s;
        }
    SpectralMeasure mu{ManifoldId::torus(2), r, std::vector<cplx>(static_cast<std::size_t>(nk) * nk, 0.0)};
    for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b) {
            cplx s = 0.0;
            for (int i = 0; i < h; ++i) s += t[static_cast<std::size_t>(i) * nk + a] * std::polar(1.0, -2.0 * kPi * (b - r) * i / h);
            mu.coeffs[static_cast<std::size_t>(a) * nk + b] = s;
        }
    normalize(mu);
    return mu;
}

Vec3 sphere_grid_point(const SphereGrid& g, int i, int j)
{
    const double th = i * kPi / g.rows;
    const double ph = j * 2.0 * kPi / g.cols;
    return {std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), std::cos(th)};
}

SpectralMeasure from_sphere_grid(const SphereGrid& g, int r)
{
    if (g.rows <= 0 || g.cols <= 0 || g.values.size() != static_cast<std::size_t>(g.rows) * g.cols)
        throw Error(ErrorKind::InvalidArgument, "malformed sphere grid");
    if (r < 0 || r > g.rows) throw Error(ErrorKind::InvalidArgument, "degree exceeds the grid resolution");
    check_density(g.values);
    const ManifoldId m = ManifoldId::sphere2();
    SpectralBasis basis(m, r);
    std::vector<cplx> acc(basis.size(), 0.0), vals(basis.size());
    BasisWorkspace ws;
    for (int i = 1; i <= g.rows; ++i) {
        const double wt = std::sin(i * kPi / g.rows);
        for (int j = 1; j <= g.cols; ++j) {
            const double rho = g.values[static_cast<std::size_t>(i - 1) * g.cols + (j - 1)];
            if (rho == 0.0) continue;
            basis.values(Point::sphere2(sphere_grid_point(g, i, j)), vals.data(), ws);
            const double c = rho * wt / (static_cast<double>(g.rows) * g.cols);
            for (std::size_t k = 0; k < vals.size(); ++k) acc[k] += c * std::conj(vals[k]);
        }
    }
    SpectralMeasure mu{m, r, std::move(acc)};
    normalize(mu);
    return mu;
}

SpectralMeasure gaussian_mixture_torus(const std::vector<std::vector<double>>& centers, double sharpness, int grid_n, int r)
{
    if (centers.empty()) throw Error(ErrorKind::InvalidArgument, "mixture needs at least one center");
    if (!(sharpness > 0.0)) throw Error(ErrorKind::InvalidArgument, "sharpness must be positive");
    if (grid_n < 2 * r + 2) throw Error(ErrorKind::InvalidArgument, "grid too coarse for the degree");
    const int d = static_cast<int>(centers.front().size());
    const ManifoldId m = ManifoldId::torus(d);
    const int nk = 2 * r + 1;
    const auto idx = enumerate_frequencies(m, r);
    SpectralMeasure mu{m, r, std::vector<cplx>(idx.size(), 0.0)};
    // the sampled density is a sum of separable bumps, so its DFT is a sum of products of 1-D DFTs
    std::vector<cplx> g(static_cast<std::size_t>(d) * nk);
    for (const auto& c : centers) {
        if (static_cast<int>(c.size()) != d) throw Error(ErrorKind::InvalidArgument, "centers have mixed dimensions");
        for (int j = 0; j < d; ++j)
            for (int a = 0; a < nk; ++a) {
                cplx s = 0.0;
                for (int i = 0; i < grid_n; ++i) {
                    const double x = static_cast<double>(i) / grid_n;
                    const double dx = wrap_diff(c[j] - x);
                    s += std::exp(-sharpness * dx * dx) * std::polar(1.0, -2.0 * kPi * (a - r) * x);
                }
                g[static_cast<std::size_t>(j) * nk + a] = s;
            }
        for (std::size_t i = 0; i < idx.size(); ++i) {
            cplx p = 1.0;
            for (int j = 0; j < d; ++j) p *= g[static_cast<std::size_t>(j) * nk + idx[i].parts[j] + r];
            mu.coeffs[i] += p;
        }
    }
    normalize(mu);
    return mu;
}

SpectralMeasure so3_doughnut(int r)
{
    SpectralMeasure mu = uniform_measure(ManifoldId::so3(), r);
    for (int k = 1; k <= r; ++k) {
        const double v = legendre_p(k - 1, 0.0) - legendre_p(k + 1, 0.0);
        mu.coeffs[frequency_position(mu.manifold, r, {{k, 0, 0}})] = v;
    }
    return mu;
}

SpectralMeasure so3_doughnut_haar(int r)
{
    SpectralMeasure mu = so3_doughnut(r);
    for (int k = 1; k <= r; ++k) mu.coeffs[frequency_position(mu.manifold, r, {{k, 0, 0}})] /= std::sqrt(2.0 * k + 1.0);
    return mu;
}

SpectralMeasure empirical_coefficients(const DiscreteCurve& c, int r)
{
    if (c.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty curve");
    SpectralBasis basis(c.manifold, r);
    SpectralMeasure mu{c.manifold, r, std::vector<cplx>(basis.size())};
    empirical_sum(basis, c.points, mu.coeffs.data(), Exec::Parallel);
    mu.coeffs[zero_frequency_position(c.manifold, r)] = 1.0;
    return mu;
}

SpectralMeasure curve_line_coefficients(const DiscreteCurve& c, int r)
{
    const std::size_t n = c.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty curve");
    std::vector<double> len(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        len[i] = distance(c.prev(i), c[i]);
        if (len[i] == 0.0) throw Error(ErrorKind::InvalidArgument, "repeated consecutive points");
        total += len[i];
    }
    SpectralBasis basis(c.manifold, r);
    SpectralMeasure mu{c.manifold, r, std::vector<cplx>(basis.size(), 0.0)};
    std::vector<cplx> vals(basis.size());
    BasisWorkspace ws;
    if (c.manifold.is_torus()) {
        const auto idx = enumerate_frequencies(c.manifold, r);
        const int d = c.manifold.torus_dim();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = c.prev(i);
            const TangentVector v = log_map(a, c[i]);
            basis.values(a, vals.data(), ws);
            const double share = len[i] / total;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                double th = 0.0;
                for (int j = 0; j < d; ++j) th += idx[k].parts[j] * v.c[j];
                th *= 2.0 * kPi;
                // conj of int_0^1 e^{i th s} ds
                mu.coeffs[k] += share * std::conj(vals[k]) * (sinc(0.5 * th) * std::polar(1.0, -0.5 * th));
            }
        }
    } else {
        const GaussLegendre gl = gauss_legendre(4 * r + 4);
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = c.prev(i);
            const TangentVector v = log_map(a, c[i]);
            const double share = len[i] / total;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const Point y = geodesic_with_velocity(a, v, 0.5 * (gl.nodes[q] + 1.0)).first;
                basis.values(y, vals.data(), ws);
                const double wq = 0.5 * share * gl.weights[q];
                for (std::size_t k = 0; k < vals.size(); ++k) mu.coeffs[k] += wq * std::conj(vals[k]);
            }
        }
    }
    mu.coeffs[zero_frequency_position(c.manifold, r)] = 1.0;
    return mu;
}

} // namespace curvedis
