#include "curvedis/basis.hpp"

#include <cmath>
#include <numbers>

namespace curvedis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t tri(int k, int m) { return static_cast<std::size_t>(k) * (k + 1) / 2 + m; }

std::size_t so3_block_offset(int k) { return static_cast<std::size_t>(k) * (2 * k - 1) * (2 * k + 1) / 3; }

} // namespace

SpectralBasis::SpectralBasis(const ManifoldId& m, int r) : m_(m), r_(r), size_(frequency_count(m, r))
{
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "degree must be nonnegative");
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        const int d = m.torus_dim();
        torus_k_.resize(size_ * d);
        std::vector<int> k(d, -r);
        for (std::size_t i = 0; i < size_; ++i) {
            for (int j = 0; j < d; ++j) torus_k_[i * d + j] = k[j];
            for (int j = d - 1; j >= 0; --j) {
                if (++k[j] <= r) break;
                k[j] = -r;
            }
        }
        break;
    }
    case ManifoldKind::Sphere2:
    case ManifoldKind::Grass24: {
        const std::size_t n = tri(r + 1, 0);
        sph_a_.assign(n, 0.0);
        sph_b_.assign(n, 0.0);
        sph_diag_.assign(r + 1, 1.0);
        for (int mm = 1; mm <= r; ++mm) sph_diag_[mm] = sph_diag_[mm - 1] * std::sqrt((2.0 * mm + 1.0) / (2.0 * mm));
        for (int mm = 0; mm <= r; ++mm) {
            if (mm + 1 <= r) sph_a_[tri(mm + 1, mm)] = std::sqrt(2.0 * mm + 3.0);
            for (int k = mm + 2; k <= r; ++k) {
                const double kk = static_cast<double>(k) * k, m2 = static_cast<double>(mm) * mm;
                sph_a_[tri(k, mm)] = std::sqrt((4.0 * kk - 1.0) / (kk - m2));
                sph_b_[tri(k, mm)] =
                    std::sqrt((2.0 * k + 1.0) * ((k - 1.0) * (k - 1.0) - m2) / ((2.0 * k - 3.0) * (kk - m2)));
            }
        }
        break;
    }
    case ManifoldKind::SO3: {
        so3_offset_.resize(r + 2);
        for (int k = 0; k <= r + 1; ++k) so3_offset_[k] = so3_block_offset(k);
        so3_rec_a_.assign(size_, 0.0);
        so3_rec_b_.assign(size_, 0.0);
        for (int a = -r; a <= r; ++a) {
            for (int b = -r; b <= r; ++b) {
                const int j = std::max(std::abs(a), std::abs(b));
                // the explicit sum for d^j_{ab} has a single term when j = max(|a|, |b|)
                const int t = std::max(0, b - a);
                const double logc = 0.5 * (std::lgamma(j + a + 1.0) + std::lgamma(j - a + 1.0) + std::lgamma(j + b + 1.0) +
                                           std::lgamma(j - b + 1.0)) -
                                    (std::lgamma(j + b - t + 1.0) + std::lgamma(t + 1.0) + std::lgamma(a - b + t + 1.0) +
                                     std::lgamma(j - a - t + 1.0));
                const double sign = ((a - b + t) % 2 == 0) ? 1.0 : -1.0;
                so3_pairs_.push_back({a, b, j, sign * std::exp(logc), 2 * j + b - a - 2 * t, a - b + 2 * t});
                for (int k = j + 1; k <= r; ++k) {
                    if (k == 1) continue;
                    const std::size_t pos = so3_offset_[k] + static_cast<std::size_t>(a + k) * (2 * k + 1) + (b + k);
                    const double den = (k - 1.0) * std::sqrt((double(k) * k - a * a) * (double(k) * k - b * b));
                    so3_rec_a_[pos] = (2.0 * k - 1.0) / den;
                    so3_rec_b_[pos] =
                        k * std::sqrt(((k - 1.0) * (k - 1.0) - a * a) * ((k - 1.0) * (k - 1.0) - b * b)) / den;
                }
            }
        }
        break;
    }
    }
}

int SpectralBasis::grad_dim() const
{
    switch (m_.kind()) {
    case ManifoldKind::Torus: return m_.torus_dim();
    case ManifoldKind::Sphere2: return 3;
    case ManifoldKind::SO3: return 3;
    case ManifoldKind::Grass24: return 6;
    }
    return 0;
}

void SpectralBasis::torus_values(const Point& x, cplx* out, BasisWorkspace& ws) const
{
    const int d = m_.torus_dim();
    const int w = 2 * r_ + 1;
    ws.c2.resize(static_cast<std::size_t>(d) * w);
    for (int j = 0; j < d; ++j)
        for (int k = -r_; k <= r_; ++k) ws.c2[j * w + k + r_] = std::polar(1.0, kTwoPi * k * x.c[j]);
    // in-place tensor expansion, k_1 slowest
    out[0] = 1.0;
    std::size_t len = 1;
    for (int j = 0; j < d; ++j) {
        const cplx* e = &ws.c2[j * w];
        for (std::size_t i = len; i-- > 0;) {
            const cplx o = out[i];
            for (int kk = w - 1; kk >= 0; --kk) out[i * w + kk] = o * e[kk];
        }
        len *= w;
    }
}

void SpectralBasis::sphere_eval(const Vec3& x, int r, double* val, double* grad, BasisWorkspace& ws) const
{
    const double z = x[2];
    const cplx w(x[0], x[1]);
    ws.c3.resize(r + 1);
    ws.c3[0] = 1.0;
    for (int m = 1; m <= r; ++m) ws.c3[m] = ws.c3[m - 1] * w;
    const std::size_t n = tri(r + 1, 0);
    ws.r1.resize(n);
    ws.r2.resize(n);
    double* p = ws.r1.data();
    double* dp = ws.r2.data();
    for (int m = 0; m <= r; ++m) {
        p[tri(m, m)] = sph_diag_[m];
        dp[tri(m, m)] = 0.0;
        if (m + 1 <= r) {
            const double a = sph_a_[tri(m + 1, m)];
            p[tri(m + 1, m)] = a * z * sph_diag_[m];
            dp[tri(m + 1, m)] = a * sph_diag_[m];
        }
        for (int k = m + 2; k <= r; ++k) {
            const std::size_t i = tri(k, m), i1 = tri(k - 1, m), i2 = tri(k - 2, m);
            const double a = sph_a_[i], b = sph_b_[i];
            p[i] = a * z * p[i1] - b * p[i2];
            dp[i] = a * (p[i1] + z * dp[i1]) - b * dp[i2];
        }
    }
    const double s2 = std::numbers::sqrt2;
    for (int k = 0; k <= r; ++k) {
        const std::size_t base = static_cast<std::size_t>(k) * k;
        val[base] = p[tri(k, 0)];
        if (grad) {
            grad[3 * base] = 0.0;
            grad[3 * base + 1] = 0.0;
            grad[3 * base + 2] = dp[tri(k, 0)];
        }
        for (int m = 1; m <= k; ++m) {
            const double pk = p[tri(k, m)], dpk = dp[tri(k, m)];
            const cplx wm = ws.c3[m];
            val[base + 2 * m - 1] = s2 * pk * wm.real();
            val[base + 2 * m] = s2 * pk * wm.imag();
            if (grad) {
                const cplx mw = static_cast<double>(m) * ws.c3[m - 1];
                double* gc = grad + 3 * (base + 2 * m - 1);
                double* gs = grad + 3 * (base + 2 * m);
                gc[0] = s2 * pk * mw.real();
                gc[1] = -s2 * pk * mw.imag();
                gc[2] = s2 * dpk * wm.real();
                gs[0] = s2 * pk * mw.imag();
                gs[1] = s2 * pk * mw.real();
                gs[2] = s2 * dpk * wm.imag();
            }
        }
    }
}

void SpectralBasis::so3_values(const Point& x, cplx* out, BasisWorkspace& ws) const
{
    const Vec4 q = so3_to_quaternion(x.mat3());
    const double c = std::hypot(q[0], q[3]);
    const double s = std::hypot(q[1], q[2]);
    const double cb = c * c - s * s;
    const double sum = 2.0 * std::atan2(q[3], q[0]);
    const double dif = 2.0 * std::atan2(-q[1], q[2]);
    const double alpha = 0.5 * (sum + dif), gamma = 0.5 * (sum - dif);
    const int r = r_;
    ws.r1.resize(2 * r + 1);
    ws.r2.resize(2 * r + 1);
    ws.r1[0] = 1.0;
    ws.r2[0] = 1.0;
    for (int i = 1; i <= 2 * r; ++i) {
        ws.r1[i] = ws.r1[i - 1] * c;
        ws.r2[i] = ws.r2[i - 1] * s;
    }
    ws.c2.resize(2 * r + 1);
    ws.c3.resize(2 * r + 1);
    for (int a = -r; a <= r; ++a) {
        ws.c2[a + r] = std::polar(1.0, -a * alpha);
        ws.c3[a + r] = std::polar(1.0, -a * gamma);
    }
    ws.r3.resize(r + 1);
    for (int k = 0; k <= r; ++k) ws.r3[k] = std::sqrt(2.0 * k + 1.0);
    for (const WignerPair& pr : so3_pairs_) {
        const int a = pr.a, b = pr.b;
        double d2 = 0.0;
        double d1 = pr.coef * ws.r1[pr.pow_c] * ws.r2[pr.pow_s];
        const cplx phase = ws.c2[a + r] * ws.c3[b + r];
        int k = pr.start_j;
        out[so3_offset_[k] + static_cast<std::size_t>(a + k) * (2 * k + 1) + (b + k)] = ws.r3[k] * d1 * phase;
        for (k = pr.start_j + 1; k <= r; ++k) {
            const std::size_t pos = so3_offset_[k] + static_cast<std::size_t>(a + k) * (2 * k + 1) + (b + k);
            double d;
            if (k == 1)
                d = cb * d1;
            else
                d = so3_rec_a_[pos] * (k * (k - 1.0) * cb - a * b) * d1 - so3_rec_b_[pos] * d2;
            d2 = d1;
            d1 = d;
            out[pos] = ws.r3[k] * d * phase;
        }
    }
}

void SpectralBasis::so3_contract(const Point& x, const cplx* w, cplx* out, BasisWorkspace& ws) const
{
    ws.c1.resize(size_);
    so3_values(x, ws.c1.data(), ws);
    const cplx* dv = ws.c1.data();
    cplx gx = 0.0, gy = 0.0, gz = 0.0;
    for (int k = 0; k <= r_; ++k) {
        const std::size_t off = so3_offset_[k];
        const int n = 2 * k + 1;
        const double kk = k * (k + 1.0);
        for (int a = -k; a <= k; ++a) {
            const cplx* row = dv + off + static_cast<std::size_t>(a + k) * n;
            const cplx* wr = w + off + static_cast<std::size_t>(a + k) * n;
            for (int b = -k; b <= k; ++b) {
                const cplx up = b < k ? std::sqrt(kk - b * (b + 1.0)) * row[b + k + 1] : cplx(0.0);
                const cplx dn = b > -k ? std::sqrt(kk - b * (b - 1.0)) * row[b + k - 1] : cplx(0.0);
                const cplx wk = wr[b + k];
                gx += wk * (up + dn);
                gy += wk * (up - dn);
                gz += wk * (static_cast<double>(b) * row[b + k]);
            }
        }
    }
    const cplx mi(0.0, -1.0);
    out[0] = 0.5 * mi * gx;
    out[1] = -0.5 * gy;
    out[2] = mi * gz;
}

void SpectralBasis::grass_eval(const Point& x, const cplx* w, cplx* val_out, cplx* grad_out, BasisWorkspace& ws) const
{
    const std::size_t nh = static_cast<std::size_t>(r_ + 1) * (r_ + 1);
    ws.r3.resize(2 * nh);
    ws.r4.resize(6 * nh);
    double* yu = ws.r3.data();
    double* yv = ws.r3.data() + nh;
    double* gu = ws.r4.data();
    double* gv = ws.r4.data() + 3 * nh;
    const bool need_grad = grad_out != nullptr;
    sphere_eval(x.vec3(0), r_, yu, need_grad ? gu : nullptr, ws);
    sphere_eval(x.vec3(3), r_, yv, need_grad ? gv : nullptr, ws);
    cplx acc[6] = {};
    std::size_t pos = 0;
    auto block = [&](int ju, int jv) {
        const std::size_t bu = static_cast<std::size_t>(ju) * ju, bv = static_cast<std::size_t>(jv) * jv;
        for (int lu = 0; lu < 2 * ju + 1; ++lu) {
            for (int lv = 0; lv < 2 * jv + 1; ++lv, ++pos) {
                const double a = yu[bu + lu], b = yv[bv + lv];
                if (val_out) val_out[pos] = a * b;
                if (w) {
                    const cplx c = w[pos];
                    const double* du = gu + 3 * (bu + lu);
                    const double* dv = gv + 3 * (bv + lv);
                    for (int i = 0; i < 3; ++i) {
                        acc[i] += c * (du[i] * b);
                        acc[3 + i] += c * (a * dv[i]);
                    }
                }
            }
        }
    };
    for (int l1 = 0; l1 <= r_; ++l1) {
        for (int l2 = 0; l2 <= std::min(l1, r_ - l1); ++l2) {
            block(l1 + l2, l1 - l2);
            if (l2 > 0) block(l1 - l2, l1 + l2);
        }
    }
    if (w)
        for (int i = 0; i < 6; ++i) grad_out[i] = acc[i];
}

void SpectralBasis::values(const Point& x, cplx* out, BasisWorkspace& ws) const
{
    require_same(m_, x.manifold);
    switch (m_.kind()) {
    case ManifoldKind::Torus: torus_values(x, out, ws); return;
    case ManifoldKind::Sphere2: {
        ws.r3.resize(size_);
        sphere_eval(x.vec3(), r_, ws.r3.data(), nullptr, ws);
        for (std::size_t i = 0; i < size_; ++i) out[i] = ws.r3[i];
        return;
    }
    case ManifoldKind::SO3: so3_values(x, out, ws); return;
    case ManifoldKind::Grass24: grass_eval(x, nullptr, out, nullptr, ws); return;
    }
}

void SpectralBasis::contract_gradient(const Point& x, const cplx* w, cplx* out, BasisWorkspace& ws) const
{
    require_same(m_, x.manifold);
    switch (m_.kind()) {
    case ManifoldKind::Torus: {
        const int d = m_.torus_dim();
        ws.c1.resize(size_);
        torus_values(x, ws.c1.data(), ws);
        cplx acc[kMaxCoords] = {};
        const int* kp = torus_k_.data();
        for (std::size_t i = 0; i < size_; ++i, kp += d) {
            const cplx t = w[i] * ws.c1[i];
            for (int j = 0; j < d; ++j) acc[j] += static_cast<double>(kp[j]) * t;
        }
        for (int j = 0; j < d; ++j) out[j] = cplx(0.0, kTwoPi) * acc[j];
        return;
    }
    case ManifoldKind::Sphere2: {
        ws.r3.resize(size_);
        ws.r4.resize(3 * size_);
        sphere_eval(x.vec3(), r_, ws.r3.data(), ws.r4.data(), ws);
        cplx acc[3] = {};
        for (std::size_t i = 0; i < size_; ++i)
            for (int c = 0; c < 3; ++c) acc[c] += w[i] * ws.r4[3 * i + c];
        for (int c = 0; c < 3; ++c) out[c] = acc[c];
        return;
    }
    case ManifoldKind::SO3: so3_contract(x, w, out, ws); return;
    case ManifoldKind::Grass24: grass_eval(x, w, nullptr, out, ws); return;
    }
}

void SpectralBasis::gradients(const Point& x, cplx* out, BasisWorkspace& ws) const
{
    require_same(m_, x.manifold);
    const int g = grad_dim();
    switch (m_.kind()) {
    case ManifoldKind::Torus: {
        ws.c1.resize(size_);
        torus_values(x, ws.c1.data(), ws);
        for (std::size_t i = 0; i < size_; ++i)
            for (int j = 0; j < g; ++j)
                out[i * g + j] = cplx(0.0, kTwoPi * torus_k_[i * g + j]) * ws.c1[i];
        return;
    }
    case ManifoldKind::Sphere2: {
        ws.r3.resize(size_);
        ws.r4.resize(3 * size_);
        sphere_eval(x.vec3(), r_, ws.r3.data(), ws.r4.data(), ws);
        for (std::size_t i = 0; i < 3 * size_; ++i) out[i] = ws.r4[i];
        return;
    }
    default: {
        // one contraction per unit weight vector; only used off the hot path
        std::vector<cplx> w(size_, 0.0);
        for (std::size_t i = 0; i < size_; ++i) {
            w[i] = 1.0;
            contract_gradient(x, w.data(), out + i * g, ws);
            w[i] = 0.0;
        }
        return;
    }
    }
}

TangentVector SpectralBasis::coords_to_tangent(const Point& x, const double* g) const
{
    switch (m_.kind()) {
    case ManifoldKind::Torus: {
        TangentVector t = TangentVector::zero(m_);
        for (int j = 0; j < m_.torus_dim(); ++j) t.c[j] = g[j];
        return t;
    }
    case ManifoldKind::Sphere2:
        return project_tangent(x, TangentVector::from_vec3(m_, Vec3(g[0], g[1], g[2])));
    case ManifoldKind::SO3:
        // the metric is a quarter of the standard one, so the gradient is four times the derivative vector
        return so3_tangent(x, 4.0 * Vec3(g[0], g[1], g[2]));
    case ManifoldKind::Grass24: {
        TangentVector t = TangentVector::zero(m_);
        for (int i = 0; i < 6; ++i) t.c[i] = g[i];
        return project_tangent(x, t);
    }
    }
    return TangentVector::zero(m_);
}

} // namespace curvedis
