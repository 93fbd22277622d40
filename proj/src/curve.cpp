#include "curvedis/curve.hpp"

#include <algorithm>
#include <cmath>

namespace curvedis {

void DiscreteCurve::validate() const
{
    if (points.empty()) throw Error(ErrorKind::InvalidArgument, "curve has no points");
    for (const Point& p : points) {
        require_same(manifold, p.manifold);
        if (manifold_defect(p) > 1e-9) throw Error(ErrorKind::NonUnitInput, "curve point is off the manifold");
    }
}

double curve_length(const DiscreteCurve& c)
{
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += distance(c.prev(i), c[i]);
    return s;
}

double max_speed(const DiscreteCurve& c)
{
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, distance(c.prev(i), c[i]));
    return static_cast<double>(c.size()) * m;
}

double curve_inner(const DiscreteCurve& c, const Tangents& a, const Tangents& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += inner(c[i], a[i], b[i]);
    return s;
}

double curve_norm(const DiscreteCurve& c, const Tangents& a) { return std::sqrt(std::max(0.0, curve_inner(c, a, a))); }

Tangents zero_tangents(const DiscreteCurve& c) { return Tangents(c.size(), TangentVector::zero(c.manifold)); }

void axpy(double a, const Tangents& x, Tangents& y)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int j = 0; j < kMaxCoords; ++j) y[i].c[j] += a * x[i].c[j];
}

Tangents scaled(double a, const Tangents& x)
{
    Tangents y = x;
    for (auto& v : y) v *= a;
    return y;
}

DiscreteCurve curve_step(const DiscreteCurve& c, const Tangents& d, double t, Tangents* velocity)
{
    DiscreteCurve out{c.manifold, {}};
    out.points.reserve(c.size());
    if (velocity) velocity->resize(c.size(), TangentVector::zero(c.manifold));
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto [y, v] = geodesic_with_velocity(c[i], d[i], t);
        out.points.push_back(y);
        if (velocity) (*velocity)[i] = v;
    }
    return out;
}

} // namespace curvedis
