#pragma once

#include <vector>

#include "curvedis/spectral.hpp"

namespace curvedis {

// Scratch buffers for one evaluating thread.
struct BasisWorkspace {
    std::vector<double> r1, r2, r3, r4;
    std::vector<cplx> c1, c2, c3, c4;
};

// All eigenfunctions of I_r evaluated together, in enumeration order.
//
// Gradients are reported in per-manifold coordinates (grad_dim() of them):
//   Torus   the d partial derivatives
//   Sphere2 ambient gradient of the polynomial extension (projected by coords_to_tangent)
//   SO3     left-invariant derivatives d/dt f(x exp(t skew(e_j)))
//   Grass24 ambient gradients of the u and v factors
class SpectralBasis {
public:
    SpectralBasis(const ManifoldId& m, int r);

    const ManifoldId& manifold() const { return m_; }
    int degree() const { return r_; }
    std::size_t size() const { return size_; }
    int grad_dim() const;

    void values(const Point& x, cplx* out, BasisWorkspace& ws) const;
    // out[c] = sum_k w[k] * (grad phi_k)(x)[c]
    void contract_gradient(const Point& x, const cplx* w, cplx* out, BasisWorkspace& ws) const;
    // out[k * grad_dim() + c]
    void gradients(const Point& x, cplx* out, BasisWorkspace& ws) const;
    // converts real gradient coordinates into a Riemannian gradient at x
    TangentVector coords_to_tangent(const Point& x, const double* g) const;

private:
    void torus_values(const Point& x, cplx* out, BasisWorkspace& ws) const;
    void sphere_eval(const Vec3& x, int r, double* val, double* grad, BasisWorkspace& ws) const;
    void so3_values(const Point& x, cplx* out, BasisWorkspace& ws) const;
    void so3_contract(const Point& x, const cplx* w, cplx* out, BasisWorkspace& ws) const;
    void grass_eval(const Point& x, const cplx* w, cplx* val_out, cplx* grad_out, BasisWorkspace& ws) const;

    ManifoldId m_;
    int r_;
    std::size_t size_;

    // Torus: frequency components per index, row-major k[i * d + j]
    std::vector<int> torus_k_;
    // Sphere2: associated Legendre recurrence tables, triangular index k(k+1)/2 + m
    std::vector<double> sph_a_, sph_b_, sph_diag_;
    // SO3: Wigner-d start values and recurrence coefficients
    struct WignerPair {
        int a, b, start_j;
        double coef;
        int pow_c, pow_s;
    };
    std::vector<WignerPair> so3_pairs_;
    std::vector<double> so3_rec_a_, so3_rec_b_;  // indexed like the output: offset(k) + (a+k)(2k+1) + (b+k)
    std::vector<std::size_t> so3_offset_;
};

} // namespace curvedis
