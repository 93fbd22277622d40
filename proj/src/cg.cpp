#include "curvedis/cg.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace curvedis {

CgConfig::CgConfig(int k_max_, double a, double b, int armijo_k_max_, int restart_extra_)
    : k_max(k_max_), armijo_a(a), armijo_b(b), armijo_k_max(armijo_k_max_), restart_extra(restart_extra_)
{
    validate();
}

void CgConfig::validate() const
{
    if (!(armijo_a > 0.0 && armijo_a < 0.5)) throw Error(ErrorKind::InvalidArgument, "Armijo parameter a must lie in (0, 1/2)");
    if (!(armijo_b > 0.0 && armijo_b < 1.0)) throw Error(ErrorKind::InvalidArgument, "Armijo parameter b must lie in (0, 1)");
    if (k_max < 0 || armijo_k_max < 0 || restart_extra < 0) throw Error(ErrorKind::InvalidArgument, "negative iteration cap");
}

bool CgTrace::monotone() const
{
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].value > records[i - 1].value) return false;
    return true;
}

std::string CgTrace::to_csv() const
{
    std::ostringstream os;
    os.precision(17);
    os << "iteration,F,grad_norm,tau,beta,restart\n";
    for (const auto& r : records)
        os << r.iter << ',' << r.value << ',' << r.grad_norm << ',' << r.tau << ',' << r.beta << ',' << (r.restart ? 1 : 0) << '\n';
    return os.str();
}

double armijo_step(const CgProblem& f, const DiscreteCurve& x, double fx, const Tangents& g, const Tangents& d,
                   const Tangents& hd, const CgConfig& cfg)
{
    const double slope = curve_inner(x, g, d);
    if (!(slope < 0.0)) throw Error(ErrorKind::NotDescentDirection, "search direction is not a descent direction");
    const double curv = curve_inner(x, d, hd);
    double tau = (curv != 0.0 && std::isfinite(curv)) ? std::abs(slope / curv) : 1.0;
    for (int k = 0;; ++k) {
        bool ok = false;
        try {
            const double ft = f.value(curve_step(x, d, tau));
            ok = ft - fx < cfg.armijo_a * tau * slope;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CutLocus) throw;
        }
        if (ok) return tau;
        if (k >= cfg.armijo_k_max) throw Error(ErrorKind::LineSearchFailed, "Armijo backtracking exhausted");
        tau *= cfg.armijo_b;
    }
}

CgResult cg_minimize(const CgProblem& f, const DiscreteCurve& x0, const CgConfig& cfg)
{
    cfg.validate();
    CgResult res{x0, {}};
    DiscreteCurve& x = res.curve;
    Tangents g;
    double fx = f.value_and_gradient(x, g);
    res.trace.records.push_back({0, fx, curve_norm(x, g), 0.0, 0.0, true, 0});

    const long period = static_cast<long>(x.size()) * x.manifold.dim();
    std::set<int> forced;
    for (int j = 1; j <= cfg.restart_extra; ++j) forced.insert(cfg.k_max * j / (cfg.restart_extra + 1));

    Tangents d = scaled(-1.0, g);
    long last_restart = 0;
    res.trace.termination = "iteration cap";
    for (int k = 0; k < cfg.k_max; ++k) {
        if (curve_norm(x, g) < cfg.grad_tol) {
            res.trace.termination = "gradient tolerance";
            break;
        }
        double tau;
        try {
            const Tangents hd = f.hessian_vec(x, g, d);
            tau = armijo_step(f, x, fx, g, d, hd, cfg);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::LineSearchFailed || e.kind() == ErrorKind::NotDescentDirection) {
                res.trace.termination = e.what();
                break;
            }
            throw Error(e.kind(), std::string(e.what()) + " (iteration " + std::to_string(k) + ")");
        }
        Tangents dt;
        DiscreteCurve xn = curve_step(x, d, tau, &dt);
        int fixed = 0;
        for (auto& p : xn.points)
            if (manifold_defect(p) > 1e-9) {
                p = reproject(p);
                ++fixed;
            }
        Tangents gn;
        const double fn = f.value_and_gradient(xn, gn);

        double beta = 0.0;
        if (curve_norm(xn, dt) > 0.0) {
            const Tangents hdt = f.hessian_vec(xn, gn, dt);
            const double den = curve_inner(xn, dt, hdt);
            // <dt, H g> = <H dt, g> for the symmetric Hessian
            if (den != 0.0) beta = curve_inner(xn, hdt, gn) / den;
            if (!std::isfinite(beta)) beta = 0.0;
        }
        Tangents dn = scaled(-1.0, gn);
        axpy(beta, dt, dn);
        const int next = k + 1;
        const bool restart = curve_inner(xn, dn, gn) > 0.0 || (next - last_restart) % period == 0 || forced.count(next) > 0;
        if (restart) {
            dn = scaled(-1.0, gn);
            last_restart = next;
        }
        res.trace.records.push_back({next, fn, curve_norm(xn, gn), tau, beta, restart, fixed});
        x = std::move(xn);
        g = std::move(gn);
        d = std::move(dn);
        fx = fn;
    }
    return res;
}

} // namespace curvedis
