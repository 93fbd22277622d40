#pragma once

#include <cmath>
#include <numbers>

#include "curvedis/objective.hpp"

namespace curvedis::testing {

// F(x) = sum_i sum_j |e^{2 pi i x_ij} - e^{2 pi i c_ij}|^2 / (4 pi^2), one Fourier mode per coordinate.
// Minimizer x = c with Hessian 2 I there. Evaluated as sin^2(pi t) / pi^2, since 1 - cos cancels near c.
class SingleModeTorus final : public CgProblem {
public:
    explicit SingleModeTorus(DiscreteCurve target) : c_(std::move(target)) {}

    double value(const DiscreteCurve& x) const override
    {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (int j = 0; j < d(); ++j) {
                const double h = std::sin(pi * (x[i].c[j] - c_[i].c[j]));
                s += h * h / (pi * pi);
            }
        return s;
    }

    Tangents gradient(const DiscreteCurve& x) const override
    {
        Tangents g(x.size(), TangentVector::zero(x.manifold));
        for (std::size_t i = 0; i < x.size(); ++i)
            for (int j = 0; j < d(); ++j) g[i].c[j] = std::sin(2.0 * pi * (x[i].c[j] - c_[i].c[j])) / pi;
        return g;
    }

    const DiscreteCurve& minimizer() const { return c_; }

private:
    static constexpr double pi = std::numbers::pi;
    int d() const { return c_.manifold.torus_dim(); }
    DiscreteCurve c_;
};

} // namespace curvedis::testing
