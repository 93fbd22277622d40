#include "curvedis/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numbers>

#include <omp.h>

namespace curvedis {

namespace {

constexpr std::size_t kBlocks = 16;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::atomic<int> g_threads{0};

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

std::pair<std::size_t, std::size_t> block_range(std::size_t n, std::size_t b, std::size_t nb)
{
    return {n * b / nb, n * (b + 1) / nb};
}

bool torus2_fast(const SpectralBasis& basis) { return basis.manifold() == ManifoldId::torus(2); }

// rows of e^{sign 2 pi i k x_{i,axis}}, k = -r..r
CMat torus_axis_table(std::span<const Point> x, std::size_t lo, std::size_t hi, int axis, int r, double sign)
{
    const int w = 2 * r + 1;
    CMat e(static_cast<Eigen::Index>(hi - lo), w);
    for (std::size_t i = lo; i < hi; ++i) {
        const double t = x[i].c[axis];
        const cplx step = std::polar(1.0, sign * kTwoPi * t);
        cplx v;
        for (int k = 0; k < w; ++k) {
            // restart the recurrence every 16 steps to keep rounding bounded
            if (k % 16 == 0) v = std::polar(1.0, sign * kTwoPi * (k - r) * t);
            e(static_cast<Eigen::Index>(i - lo), k) = v;
            v *= step;
        }
    }
    return e;
}

void torus2_sum_block(const SpectralBasis& basis, std::span<const Point> x, std::size_t lo, std::size_t hi, cplx* out)
{
    const int r = basis.degree();
    const int w = 2 * r + 1;
    const CMat e1 = torus_axis_table(x, lo, hi, 0, r, -1.0);
    const CMat e2 = torus_axis_table(x, lo, hi, 1, r, -1.0);
    const CMat m = e1.transpose() * e2;
    for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) out[static_cast<std::size_t>(a) * w + b] += m(a, b);
}

void torus2_grad_block(const SpectralBasis& basis, std::span<const Point> x, std::size_t lo, std::size_t hi,
                       const cplx* wk, double scale, TangentVector* out)
{
    const int r = basis.degree();
    const int w = 2 * r + 1;
    const CMat e1 = torus_axis_table(x, lo, hi, 0, r, 1.0);
    const CMat e2 = torus_axis_table(x, lo, hi, 1, r, 1.0);
    CMat wm(w, w), dw(w, w);
    for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) {
            wm(a, b) = wk[static_cast<std::size_t>(a) * w + b];
            dw(a, b) = cplx(0.0, kTwoPi * (a - r)) * wm(a, b);
        }
    const CMat p = e1 * wm;
    const CMat q = e1 * dw;
    for (std::size_t i = lo; i < hi; ++i) {
        const auto row = static_cast<Eigen::Index>(i - lo);
        cplx g1 = 0.0, g2 = 0.0;
        for (int b = 0; b < w; ++b) {
            g1 += q(row, b) * e2(row, b);
            g2 += p(row, b) * cplx(0.0, kTwoPi * (b - r)) * e2(row, b);
        }
        TangentVector t = TangentVector::zero(basis.manifold());
        t.c[0] = scale * g1.real();
        t.c[1] = scale * g2.real();
        out[i] = t;
    }
}

void generic_sum_block(const SpectralBasis& basis, std::span<const Point> x, std::size_t lo, std::size_t hi, cplx* out,
                       BasisWorkspace& ws, std::vector<cplx>& vals)
{
    const std::size_t n = basis.size();
    vals.resize(n);
    for (std::size_t i = lo; i < hi; ++i) {
        basis.values(x[i], vals.data(), ws);
        for (std::size_t k = 0; k < n; ++k) out[k] += std::conj(vals[k]);
    }
}

void generic_grad_point(const SpectralBasis& basis, const Point& x, const cplx* w, double scale, TangentVector& out,
                        BasisWorkspace& ws)
{
    cplx g[kMaxCoords];
    basis.contract_gradient(x, w, g, ws);
    double re[kMaxCoords];
    for (int j = 0; j < basis.grad_dim(); ++j) re[j] = scale * g[j].real();
    out = basis.coords_to_tangent(x, re);
}

} // namespace

int thread_limit()
{
    int t = g_threads.load();
    if (t > 0) return t;
    t = omp_get_max_threads();
    if (const char* env = std::getenv("CURVEDIS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) t = v;
    }
    g_threads.store(t);
    return t;
}

void set_thread_limit(int n) { g_threads.store(std::max(1, n)); }

void empirical_sum(const SpectralBasis& basis, std::span<const Point> x, cplx* out, Exec exec)
{
    const std::size_t n = basis.size();
    const std::size_t npts = x.size();
    std::fill(out, out + n, cplx(0.0));
    if (npts == 0) return;
    for (const Point& p : x) require_same(basis.manifold(), p.manifold);
    const double inv = 1.0 / static_cast<double>(npts);
    if (exec == Exec::Serial) {
        BasisWorkspace ws;
        std::vector<cplx> vals;
        generic_sum_block(basis, x, 0, npts, out, ws, vals);
    } else {
        const std::size_t nb = std::min(kBlocks, npts);
        std::vector<cplx> partial(nb * n, cplx(0.0));
        const bool fast = torus2_fast(basis);
#pragma omp parallel for num_threads(thread_limit()) schedule(static)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
            const auto [lo, hi] = block_range(npts, b, nb);
            cplx* dst = partial.data() + b * n;
            if (fast) {
                torus2_sum_block(basis, x, lo, hi, dst);
            } else {
                BasisWorkspace ws;
                std::vector<cplx> vals;
                generic_sum_block(basis, x, lo, hi, dst, ws, vals);
            }
        }
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t k = 0; k < n; ++k) out[k] += partial[b * n + k];
    }
    for (std::size_t k = 0; k < n; ++k) out[k] *= inv;
}

void gradient_contract(const SpectralBasis& basis, std::span<const Point> x, const cplx* w, double scale,
                       TangentVector* out, Exec exec)
{
    const std::size_t npts = x.size();
    if (npts == 0) return;
    if (exec == Exec::Serial) {
        BasisWorkspace ws;
        for (std::size_t i = 0; i < npts; ++i) generic_grad_point(basis, x[i], w, scale, out[i], ws);
        return;
    }
    const std::size_t nb = std::min(kBlocks, npts);
    const bool fast = torus2_fast(basis);
#pragma omp parallel for num_threads(thread_limit()) schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const auto [lo, hi] = block_range(npts, b, nb);
        if (fast) {
            torus2_grad_block(basis, x, lo, hi, w, scale, out);
        } else {
            BasisWorkspace ws;
            for (std::size_t i = lo; i < hi; ++i) generic_grad_point(basis, x[i], w, scale, out[i], ws);
        }
    }
}

} // namespace curvedis
