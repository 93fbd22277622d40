#include "curvedis/objective.hpp"

#include <cmath>

namespace curvedis {

void ObjectiveConfig::validate() const
{
    if (!(kernel.manifold == target.manifold)) throw Error(ErrorKind::ManifoldMismatch, "kernel and target live on different manifolds");
    if (kernel.degree != target.degree) throw Error(ErrorKind::InvalidArgument, "kernel and target degrees differ");
    if (kernel.alpha.size() != target.coeffs.size()) throw Error(ErrorKind::InvalidArgument, "kernel weights do not match the target");
    if (!(speed_limit > 0.0)) throw Error(ErrorKind::InvalidArgument, "speed limit must be positive");
    if (!(penalty_weight >= 0.0)) throw Error(ErrorKind::InvalidArgument, "penalty weight must be nonnegative");
    if (!(fd_step > 0.0 && fd_step <= 1e-4)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must lie in (0, 1e-4]");
}

ObjectiveConfig make_objective_config(const SpectralMeasure& target, double speed_limit, double penalty_weight)
{
    ObjectiveConfig cfg;
    cfg.target = target;
    cfg.kernel = kernel_weights(target.manifold, target.degree);
    cfg.speed_limit = speed_limit;
    cfg.penalty_weight = penalty_weight;
    cfg.validate();
    return cfg;
}

double CgProblem::value_and_gradient(const DiscreteCurve& x, Tangents& g) const
{
    g = gradient(x);
    return value(x);
}

Tangents CgProblem::hessian_vec(const DiscreteCurve& x, const Tangents& gx, const Tangents& dir) const
{
    return fd_hessian_vec(*this, x, gx, dir, fd_step());
}

Tangents fd_hessian_vec(const CgProblem& f, const DiscreteCurve& x, const Tangents& gx, const Tangents& dir, double h)
{
    const double nd = curve_norm(x, dir);
    if (!(nd > 0.0)) throw Error(ErrorKind::ZeroDirection, "Hessian direction is zero");
    const double t = h / nd;
    Tangents vel;
    const DiscreteCurve y = curve_step(x, dir, t, &vel);
    const Tangents gy = f.gradient(y);
    Tangents out(x.size(), TangentVector::zero(x.manifold));
    for (std::size_t i = 0; i < x.size(); ++i) {
        // the reversed geodesic from y_i with velocity -t v_i lands on x_i at time 1
        const TangentVector back = parallel_transport(y[i], -t * vel[i], gy[i]);
        out[i] = (1.0 / t) * (back - gx[i]);
    }
    return out;
}

Objective::Objective(ObjectiveConfig cfg) : cfg_(std::move(cfg))
{
    cfg_.validate();
    basis_ = std::make_shared<SpectralBasis>(cfg_.target.manifold, cfg_.target.degree);
}

void Objective::check(const DiscreteCurve& x) const
{
    require_same(cfg_.target.manifold, x.manifold);
    if (x.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty curve");
}

double Objective::data_from(const std::vector<cplx>& nu) const
{
    double s = 0.0;
    for (std::size_t k = 0; k < nu.size(); ++k) s += cfg_.kernel.alpha[k] * std::norm(cfg_.target.coeffs[k] - nu[k]);
    return s;
}

double Objective::data_term(const DiscreteCurve& x) const
{
    check(x);
    std::vector<cplx> nu(basis_->size());
    empirical_sum(*basis_, x.points, nu.data(), cfg_.exec);
    return data_from(nu);
}

double Objective::penalty(const DiscreteCurve& x) const
{
    check(x);
    const std::size_t n = x.size();
    if (cfg_.penalty_weight == 0.0 || n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = nn * distance(x.prev(i), x[i]) - cfg_.speed_limit;
        if (e > 0.0) s += e * e;
    }
    return cfg_.penalty_weight / nn * s;
}

double Objective::value(const DiscreteCurve& x) const { return data_term(x) + penalty(x); }

void Objective::penalty_gradient(const DiscreteCurve& x, Tangents& g) const
{
    const std::size_t n = x.size();
    if (cfg_.penalty_weight == 0.0 || n < 2) return;
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = i == 0 ? n - 1 : i - 1;
        const double d = distance(x[ip], x[i]);
        const double e = nn * d - cfg_.speed_limit;
        if (e <= 0.0) continue;
        if (d == 0.0) throw Error(ErrorKind::NonsmoothPoint, "coincident consecutive points on an active segment");
        const double c = 2.0 * cfg_.penalty_weight * e / d;
        // grad_x dist(x, y) = -log_x(y) / dist
        g[i] -= c * log_map(x[i], x[ip]);
        g[ip] -= c * log_map(x[ip], x[i]);
    }
}

double Objective::value_and_gradient(const DiscreteCurve& x, Tangents& g) const
{
    check(x);
    const std::size_t n = basis_->size();
    std::vector<cplx> nu(n);
    empirical_sum(*basis_, x.points, nu.data(), cfg_.exec);
    std::vector<cplx> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = cfg_.kernel.alpha[k] * (nu[k] - cfg_.target.coeffs[k]);
    g.assign(x.size(), TangentVector::zero(x.manifold));
    gradient_contract(*basis_, x.points, w.data(), 2.0 / static_cast<double>(x.size()), g.data(), cfg_.exec);
    penalty_gradient(x, g);
    return data_from(nu) + penalty(x);
}

Tangents Objective::gradient(const DiscreteCurve& x) const
{
    Tangents g;
    value_and_gradient(x, g);
    return g;
}

double discrepancy_sq(const SpectralMeasure& nu, const ObjectiveConfig& cfg)
{
    cfg.validate();
    require_same(cfg.target.manifold, nu.manifold);
    if (nu.degree != cfg.target.degree) throw Error(ErrorKind::InvalidArgument, "measure degree does not match the objective");
    double s = 0.0;
    for (std::size_t k = 0; k < nu.coeffs.size(); ++k) s += cfg.kernel.alpha[k] * std::norm(cfg.target.coeffs[k] - nu.coeffs[k]);
    return s;
}

double penalty(const DiscreteCurve& x, const ObjectiveConfig& cfg) { return Objective(cfg).penalty(x); }
double objective(const DiscreteCurve& x, const ObjectiveConfig& cfg) { return Objective(cfg).value(x); }
Tangents gradient(const DiscreteCurve& x, const ObjectiveConfig& cfg) { return Objective(cfg).gradient(x); }

Tangents hessian_vec(const DiscreteCurve& x, const Tangents& dir, const ObjectiveConfig& cfg)
{
    const Objective f(cfg);
    return f.hessian_vec(x, f.gradient(x), dir);
}

} // namespace curvedis
