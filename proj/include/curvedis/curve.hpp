#pragma once

#include <vector>

#include "curvedis/manifold.hpp"

namespace curvedis {

using Tangents = std::vector<TangentVector>;

// Closed polygon x_1..x_N with x_0 = x_N.
struct DiscreteCurve {
    ManifoldId manifold;
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    const Point& operator[](std::size_t i) const { return points[i]; }
    // x_{i-1} with wraparound
    const Point& prev(std::size_t i) const { return points[i == 0 ? points.size() - 1 : i - 1]; }
    void validate() const;
};

// sum of the closing and interior segment lengths
double curve_length(const DiscreteCurve& c);
// N * max_i dist(x_{i-1}, x_i)
double max_speed(const DiscreteCurve& c);

// product-manifold metric: unweighted sum over points
double curve_inner(const DiscreteCurve& c, const Tangents& a, const Tangents& b);
double curve_norm(const DiscreteCurve& c, const Tangents& a);
Tangents zero_tangents(const DiscreteCurve& c);
void axpy(double a, const Tangents& x, Tangents& y);
Tangents scaled(double a, const Tangents& x);

// pointwise geodesic step y_i = exp(x_i, t d_i), with the velocities at t when requested
DiscreteCurve curve_step(const DiscreteCurve& c, const Tangents& d, double t, Tangents* velocity = nullptr);

} // namespace curvedis
