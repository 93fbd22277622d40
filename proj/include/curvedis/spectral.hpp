#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <vector>

#include "curvedis/manifold.hpp"

namespace curvedis {

using cplx = std::complex<double>;

// Torus: (k_1..k_d). Sphere2: (k, l) with l in 1..2k+1.
// SO3: (k, l, l') with l, l' in -k..k. Grass24: (lambda_1, lambda_2, l) with l in 1..Z(lambda).
struct FrequencyIndex {
    std::vector<int> parts;

    bool operator==(const FrequencyIndex&) const = default;
    auto operator<=>(const FrequencyIndex&) const = default;
};

// Enumeration order (lexicographic):
//   Torus   k_1 slowest, each component from -r to r.
//   Sphere2 k ascending, then l; l = 1 is the zonal harmonic, l = 2m is the cos(m phi) and
//           l = 2m + 1 the sin(m phi) harmonic, with the polar axis along e_3.
//   SO3     k ascending, then l, then l'.
//   Grass24 lambda_1 ascending, lambda_2 ascending (lambda_2 <= lambda_1, lambda_1 + lambda_2 <= r), then l.
std::vector<FrequencyIndex> enumerate_frequencies(const ManifoldId& m, int r);
std::size_t frequency_count(const ManifoldId& m, int r);
// position inside enumerate_frequencies(m, r), or -1 when idx lies outside I_r
std::ptrdiff_t frequency_position(const ManifoldId& m, int r, const FrequencyIndex& idx);
// smallest r with idx in I_r
int frequency_degree(const ManifoldId& m, const FrequencyIndex& idx);
void validate_index(const ManifoldId& m, const FrequencyIndex& idx);

// Eigenspace multiplicity of lambda on G(2,4): eta(lambda_2) (2 lambda_1 + 2 lambda_2 + 1)(2 lambda_1 - 2 lambda_2 + 1).
int grass_multiplicity(int lambda1, int lambda2);

struct GrassComponent {
    int j_u, j_v;   // spherical harmonic degrees of the u and v factors
    int l_u, l_v;   // 1-based harmonic indices within those degrees
};
GrassComponent grass_component(int lambda1, int lambda2, int l);

cplx eigenfunction(const ManifoldId& m, const FrequencyIndex& idx, const Point& x);

struct ComplexTangent {
    TangentVector re, im;
};
ComplexTangent eigenfunction_gradient(const ManifoldId& m, const FrequencyIndex& idx, const Point& x);

double eigenvalue(const ManifoldId& m, const FrequencyIndex& idx);
// bound on sup_x |phi_idx(x)|
double sup_norm_bound(const ManifoldId& m, const FrequencyIndex& idx);

struct KernelWeights {
    ManifoldId manifold;
    double smoothness = 0.0;
    int degree = 0;
    std::vector<double> alpha;  // aligned with enumerate_frequencies(manifold, degree)
};

double kernel_weight(const ManifoldId& m, const FrequencyIndex& idx);
KernelWeights kernel_weights(const ManifoldId& m, int r);
double kernel_smoothness(const ManifoldId& m);

double kernel_closed_form(const ManifoldId& m, const Point& x, const Point& y);
// degree-r partial sum via the addition theorem (Legendre on S^2, Chebyshev U on SO(3))
double kernel_series(const ManifoldId& m, const Point& x, const Point& y, int r);
// sum over I_r of alpha_k phi_k(x) conj(phi_k(y)), any manifold
double kernel_truncated(const ManifoldId& m, const Point& x, const Point& y, int r);

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

double legendre_p(int k, double t);
double chebyshev_u(int n, double t);

} // namespace curvedis
