#include "curvedis/spectral.hpp"

#include <cmath>
#include <numbers>

#include "curvedis/basis.hpp"

namespace curvedis {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t ipow(std::size_t b, int e)
{
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::size_t expected_parts(const ManifoldId& m)
{
    switch (m.kind()) {
    case ManifoldKind::Torus: return static_cast<std::size_t>(m.torus_dim());
    case ManifoldKind::Sphere2: return 2;
    case ManifoldKind::SO3: return 3;
    case ManifoldKind::Grass24: return 3;
    }
    return 0;
}

} // namespace

int grass_multiplicity(int lambda1, int lambda2)
{
    if (lambda2 < 0 || lambda1 < lambda2) throw Error(ErrorKind::InvalidArgument, "need lambda_1 >= lambda_2 >= 0");
    const int eta = lambda2 == 0 ? 1 : 2;
    return eta * (2 * lambda1 + 2 * lambda2 + 1) * (2 * lambda1 - 2 * lambda2 + 1);
}

GrassComponent grass_component(int lambda1, int lambda2, int l)
{
    const int mult = grass_multiplicity(lambda1, lambda2);
    if (l < 1 || l > mult) throw Error(ErrorKind::InvalidArgument, "harmonic index outside the eigenspace");
    int j = lambda1 + lambda2, jp = lambda1 - lambda2;
    const int first = (2 * j + 1) * (2 * jp + 1);
    int t = l - 1;
    if (t >= first) {
        t -= first;
        std::swap(j, jp);
    }
    return {j, jp, t / (2 * jp + 1) + 1, t % (2 * jp + 1) + 1};
}

void validate_index(const ManifoldId& m, const FrequencyIndex& idx)
{
    const auto& p = idx.parts;
    if (p.size() != expected_parts(m)) throw Error(ErrorKind::ManifoldMismatch, "frequency index does not match manifold " + m.tag());
    switch (m.kind()) {
    case ManifoldKind::Torus: return;
    case ManifoldKind::Sphere2:
        if (p[0] < 0 || p[1] < 1 || p[1] > 2 * p[0] + 1) throw Error(ErrorKind::InvalidArgument, "invalid sphere index");
        return;
    case ManifoldKind::SO3:
        if (p[0] < 0 || std::abs(p[1]) > p[0] || std::abs(p[2]) > p[0])
            throw Error(ErrorKind::InvalidArgument, "invalid Wigner index");
        return;
    case ManifoldKind::Grass24:
        if (p[1] < 0 || p[0] < p[1] || p[2] < 1 || p[2] > grass_multiplicity(p[0], p[1]))
            throw Error(ErrorKind::InvalidArgument, "invalid Grassmannian index");
        return;
    }
}

int frequency_degree(const ManifoldId& m, const FrequencyIndex& idx)
{
    validate_index(m, idx);
    const auto& p = idx.parts;
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        int r = 0;
        for (int k : p) r = std::max(r, std::abs(k));
        return r;
    }
    case ManifoldKind::Sphere2:
    case ManifoldKind::SO3: return p[0];
    case ManifoldKind::Grass24: return p[0] + p[1];
    }
    return 0;
}

std::size_t frequency_count(const ManifoldId& m, int r)
{
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "degree must be nonnegative");
    switch (m.kind()) {
    case ManifoldKind::Torus: return ipow(2 * r + 1, m.torus_dim());
    case ManifoldKind::Sphere2: return static_cast<std::size_t>(r + 1) * (r + 1);
    case ManifoldKind::SO3: return static_cast<std::size_t>(r + 1) * (2 * r + 1) * (2 * r + 3) / 3;
    case ManifoldKind::Grass24: {
        std::size_t n = 0;
        for (int l1 = 0; l1 <= r; ++l1)
            for (int l2 = 0; l2 <= std::min(l1, r - l1); ++l2) n += grass_multiplicity(l1, l2);
        return n;
    }
    }
    return 0;
}

std::vector<FrequencyIndex> enumerate_frequencies(const ManifoldId& m, int r)
{
    std::vector<FrequencyIndex> out;
    out.reserve(frequency_count(m, r));
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        const int d = m.torus_dim();
        std::vector<int> k(d, -r);
        const std::size_t n = frequency_count(m, r);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back({k});
            for (int j = d - 1; j >= 0; --j) {
                if (++k[j] <= r) break;
                k[j] = -r;
            }
        }
        break;
    }
    case ManifoldKind::Sphere2:
        for (int k = 0; k <= r; ++k)
            for (int l = 1; l <= 2 * k + 1; ++l) out.push_back({{k, l}});
        break;
    case ManifoldKind::SO3:
        for (int k = 0; k <= r; ++k)
            for (int a = -k; a <= k; ++a)
                for (int b = -k; b <= k; ++b) out.push_back({{k, a, b}});
        break;
    case ManifoldKind::Grass24:
        for (int l1 = 0; l1 <= r; ++l1)
            for (int l2 = 0; l2 <= std::min(l1, r - l1); ++l2)
                for (int l = 1; l <= grass_multiplicity(l1, l2); ++l) out.push_back({{l1, l2, l}});
        break;
    }
    return out;
}

std::ptrdiff_t frequency_position(const ManifoldId& m, int r, const FrequencyIndex& idx)
{
    if (frequency_degree(m, idx) > r) return -1;
    const auto& p = idx.parts;
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        std::ptrdiff_t pos = 0;
        for (int k : p) pos = pos * (2 * r + 1) + (k + r);
        return pos;
    }
    case ManifoldKind::Sphere2: return static_cast<std::ptrdiff_t>(p[0]) * p[0] + p[1] - 1;
    case ManifoldKind::SO3: {
        const std::ptrdiff_t k = p[0];
        return k * (2 * k - 1) * (2 * k + 1) / 3 + (p[1] + k) * (2 * k + 1) + (p[2] + k);
    }
    case ManifoldKind::Grass24: {
        std::ptrdiff_t pos = 0;
        for (int l1 = 0; l1 <= r; ++l1) {
            for (int l2 = 0; l2 <= std::min(l1, r - l1); ++l2) {
                if (l1 == p[0] && l2 == p[1]) return pos + p[2] - 1;
                pos += grass_multiplicity(l1, l2);
            }
        }
        return -1;
    }
    }
    return -1;
}

cplx eigenfunction(const ManifoldId& m, const FrequencyIndex& idx, const Point& x)
{
    require_same(m, x.manifold);
    const int r = frequency_degree(m, idx);
    if (m.is_torus()) {
        double t = 0.0;
        for (int j = 0; j < m.torus_dim(); ++j) t += idx.parts[j] * x.c[j];
        return std::polar(1.0, 2.0 * kPi * t);
    }
    SpectralBasis basis(m, r);
    std::vector<cplx> v(basis.size());
    BasisWorkspace ws;
    basis.values(x, v.data(), ws);
    return v[frequency_position(m, r, idx)];
}

ComplexTangent eigenfunction_gradient(const ManifoldId& m, const FrequencyIndex& idx, const Point& x)
{
    require_same(m, x.manifold);
    const int r = frequency_degree(m, idx);
    if (m.is_torus()) {
        const cplx f = eigenfunction(m, idx, x);
        ComplexTangent g{TangentVector::zero(m), TangentVector::zero(m)};
        for (int j = 0; j < m.torus_dim(); ++j) {
            const cplx c = cplx(0.0, 2.0 * kPi * idx.parts[j]) * f;
            g.re.c[j] = c.real();
            g.im.c[j] = c.imag();
        }
        return g;
    }
    SpectralBasis basis(m, r);
    std::vector<cplx> w(basis.size(), 0.0);
    w[frequency_position(m, r, idx)] = 1.0;
    cplx g[6];
    BasisWorkspace ws;
    basis.contract_gradient(x, w.data(), g, ws);
    double re[6], im[6];
    for (int i = 0; i < basis.grad_dim(); ++i) {
        re[i] = g[i].real();
        im[i] = g[i].imag();
    }
    return {basis.coords_to_tangent(x, re), basis.coords_to_tangent(x, im)};
}

double eigenvalue(const ManifoldId& m, const FrequencyIndex& idx)
{
    validate_index(m, idx);
    const auto& p = idx.parts;
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        double s = 0.0;
        for (int k : p) s += static_cast<double>(k) * k;
        return 4.0 * kPi * kPi * s;
    }
    case ManifoldKind::Sphere2:
    case ManifoldKind::SO3: return p[0] * (p[0] + 1.0);
    case ManifoldKind::Grass24: return 4.0 * (double(p[0]) * p[0] + double(p[1]) * p[1] + p[0]);
    }
    return 0.0;
}

double sup_norm_bound(const ManifoldId& m, const FrequencyIndex& idx)
{
    validate_index(m, idx);
    const auto& p = idx.parts;
    switch (m.kind()) {
    case ManifoldKind::Torus: return 1.0;
    case ManifoldKind::Sphere2:
    case ManifoldKind::SO3: return std::sqrt(2.0 * p[0] + 1.0);
    case ManifoldKind::Grass24: {
        const GrassComponent c = grass_component(p[0], p[1], p[2]);
        return std::sqrt((2.0 * c.j_u + 1.0) * (2.0 * c.j_v + 1.0));
    }
    }
    return 1.0;
}

double kernel_smoothness(const ManifoldId& m)
{
    switch (m.kind()) {
    case ManifoldKind::Torus: return 0.5 * (m.torus_dim() + 1);
    case ManifoldKind::Sphere2: return 1.5;
    case ManifoldKind::SO3: return 2.0;
    case ManifoldKind::Grass24: return 2.5;
    }
    return 0.0;
}

double kernel_weight(const ManifoldId& m, const FrequencyIndex& idx)
{
    validate_index(m, idx);
    const auto& p = idx.parts;
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        double s = 1.0;
        for (int k : p) s += static_cast<double>(k) * k;
        return std::pow(s, -0.5 * (m.torus_dim() + 1));
    }
    case ManifoldKind::Sphere2: {
        const double k = p[0];
        if (p[0] == 0) return 1.0 / 3.0;
        return 2.0 / ((2 * k - 1) * (2 * k + 1) * (2 * k + 3));
    }
    case ManifoldKind::SO3: {
        const double k = p[0];
        if (p[0] == 0) return kPi / 8.0 - 1.0 / 3.0;
        return 1.0 / ((2 * k - 1) * (2 * k + 1) * (2 * k + 1) * (2 * k + 3));
    }
    case ManifoldKind::Grass24:
        return std::pow(1.0 + double(p[0]) * p[0] + double(p[1]) * p[1], -2.5);
    }
    return 0.0;
}

KernelWeights kernel_weights(const ManifoldId& m, int r)
{
    KernelWeights kw{m, kernel_smoothness(m), r, {}};
    const auto idx = enumerate_frequencies(m, r);
    kw.alpha.reserve(idx.size());
    for (const auto& k : idx) kw.alpha.push_back(kernel_weight(m, k));
    return kw;
}

double kernel_closed_form(const ManifoldId& m, const Point& x, const Point& y)
{
    require_same(m, x.manifold);
    require_same(m, y.manifold);
    switch (m.kind()) {
    case ManifoldKind::Sphere2: return 1.0 - 0.5 * (x.vec3() - y.vec3()).norm();
    // pi/8 (1 - sin(w/2)) for the rotation angle w of x^T y; ||x - y||_F = 2 sqrt2 sin(w/2) for 3x3 rotations
    case ManifoldKind::SO3: return kPi / 8.0 - kPi * std::numbers::sqrt2 / 32.0 * (x.mat3() - y.mat3()).norm();
    default: throw Error(ErrorKind::Unsupported, "no closed-form kernel on " + m.tag());
    }
}

double kernel_series(const ManifoldId& m, const Point& x, const Point& y, int r)
{
    require_same(m, x.manifold);
    require_same(m, y.manifold);
    switch (m.kind()) {
    case ManifoldKind::Sphere2: {
        const double t = std::clamp(x.vec3().dot(y.vec3()), -1.0, 1.0);
        double s = 1.0 / 3.0, p0 = 1.0, p1 = t;
        for (int k = 1; k <= r; ++k) {
            s += 2.0 / ((2.0 * k - 1.0) * (2.0 * k + 3.0)) * p1;
            const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        return s;
    }
    case ManifoldKind::SO3: {
        const double tr = (x.mat3().transpose() * y.mat3()).trace();
        const double t = std::clamp(0.5 * std::sqrt(std::max(tr + 1.0, 0.0)), 0.0, 1.0);
        // U_n by recurrence, stepping two degrees per term
        double s = kPi / 8.0 - 1.0 / 3.0, u0 = 1.0, u1 = 2.0 * t;
        for (int k = 1; k <= r; ++k) {
            const double u2 = 2.0 * t * u1 - u0;
            s += u2 / ((2.0 * k - 1.0) * (2.0 * k + 1.0) * (2.0 * k + 3.0));
            u0 = u2;
            u1 = 2.0 * t * u2 - u1;
        }
        return s;
    }
    default: throw Error(ErrorKind::Unsupported, "no addition-theorem series on " + m.tag());
    }
}

double kernel_truncated(const ManifoldId& m, const Point& x, const Point& y, int r)
{
    SpectralBasis basis(m, r);
    const KernelWeights kw = kernel_weights(m, r);
    std::vector<cplx> a(basis.size()), b(basis.size());
    BasisWorkspace ws;
    basis.values(x, a.data(), ws);
    basis.values(y, b.data(), ws);
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += kw.alpha[i] * a[i] * std::conj(b[i]);
    return s.real();
}

double legendre_p(int k, double t)
{
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative Legendre degree");
    if (k == 0) return 1.0;
    double p0 = 1.0, p1 = t;
    for (int n = 1; n < k; ++n) {
        const double p2 = ((2.0 * n + 1.0) * t * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double chebyshev_u(int n, double t)
{
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative Chebyshev degree");
    if (n == 0) return 1.0;
    double u0 = 1.0, u1 = 2.0 * t;
    for (int i = 1; i < n; ++i) {
        const double u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

GaussLegendre gauss_legendre(int n)
{
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre needs at least one node");
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n, p0 = P_{n-1}
            dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
    return gl;
}

} // namespace curvedis
