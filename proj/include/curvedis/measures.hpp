#pragma once

#include <vector>

#include "curvedis/curve.hpp"
#include "curvedis/spectral.hpp"

namespace curvedis {

// Fourier coefficients mu_k = int conj(phi_k) dmu, aligned with enumerate_frequencies(manifold, degree).
struct SpectralMeasure {
    ManifoldId manifold;
    int degree = 0;
    std::vector<cplx> coeffs;

    cplx at(const FrequencyIndex& idx) const;
    // drops or zero-fills coefficients to reach degree r
    SpectralMeasure resized(int r) const;
    // checks the zero-frequency normalization and the sup-norm bounds
    void validate(double tol = 1e-9) const;
};

std::size_t zero_frequency_position(const ManifoldId& m, int r);

SpectralMeasure uniform_measure(const ManifoldId& m, int r);

// Row-major grayscale raster; pixel (i, j) sits at x = (j / W, i / H).
struct Image {
    int height = 0, width = 0;
    std::vector<double> pixels;
    double operator()(int i, int j) const { return pixels[static_cast<std::size_t>(i) * width + j]; }
};
SpectralMeasure from_torus_image(const Image& img, int r, bool invert = false);

// rho_{i,j} for i = 1..rows (polar angle i*pi/rows) and j = 1..cols (azimuth j*2pi/cols), row-major
struct SphereGrid {
    int rows = 180, cols = 360;
    std::vector<double> values;
};
// the grid point x_{i,j} used by from_sphere_grid, 1-based
Vec3 sphere_grid_point(const SphereGrid& g, int i, int j);
SpectralMeasure from_sphere_grid(const SphereGrid& g, int r);

SpectralMeasure gaussian_mixture_torus(const std::vector<std::vector<double>>& centers, double sharpness, int grid_n,
                                       int r);

// P_{k-1}(0) - P_{k+1}(0) on the (k,0,0) entries, P_{-1} = P_0
SpectralMeasure so3_doughnut(int r);
// coefficients of the normalized Haar measure restricted to the doughnut in the orthonormal Wigner basis
SpectralMeasure so3_doughnut_haar(int r);

SpectralMeasure empirical_coefficients(const DiscreteCurve& c, int r);
// line integral over the closed geodesic polygon with arclength-proportional parametrization
SpectralMeasure curve_line_coefficients(const DiscreteCurve& c, int r);

} // namespace curvedis
