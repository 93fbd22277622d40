#pragma once

#include <span>

#include "curvedis/basis.hpp"
#include "curvedis/curve.hpp"

namespace curvedis {

// Serial is the reference; Parallel splits the points into a fixed number of blocks and
// reduces them in block order, so its result does not depend on the thread count.
enum class Exec { Serial, Parallel };

// CURVEDIS_THREADS if set, else the OpenMP default
int thread_limit();
void set_thread_limit(int n);

// out[k] = (1/N) sum_i conj(phi_k(x_i))
void empirical_sum(const SpectralBasis& basis, std::span<const Point> x, cplx* out, Exec exec);

// out[i] = scale * Re sum_k w[k] grad phi_k(x_i), as a Riemannian gradient at x_i
void gradient_contract(const SpectralBasis& basis, std::span<const Point> x, const cplx* w, double scale,
                       TangentVector* out, Exec exec);

} // namespace curvedis
