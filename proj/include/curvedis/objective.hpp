#pragma once

#include <memory>

#include "curvedis/basis.hpp"
#include "curvedis/curve.hpp"
#include "curvedis/kernels.hpp"
#include "curvedis/measures.hpp"

namespace curvedis {

struct ObjectiveConfig {
    SpectralMeasure target;
    KernelWeights kernel;
    double speed_limit = 1.0;     // L
    double penalty_weight = 0.0;  // lambda
    double fd_step = 1e-8;        // h
    Exec exec = Exec::Parallel;

    void validate() const;
};

// kernel weights taken at the target's degree
ObjectiveConfig make_objective_config(const SpectralMeasure& target, double speed_limit, double penalty_weight);

// What the optimizer needs; hessian_vec defaults to the geodesic finite difference of gradient().
class CgProblem {
public:
    virtual ~CgProblem() = default;
    virtual double value(const DiscreteCurve& x) const = 0;
    virtual Tangents gradient(const DiscreteCurve& x) const = 0;
    virtual double value_and_gradient(const DiscreteCurve& x, Tangents& g) const;
    // gx is the gradient at x
    virtual Tangents hessian_vec(const DiscreteCurve& x, const Tangents& gx, const Tangents& dir) const;
    virtual double fd_step() const { return 1e-8; }
};

// (|d|/h) (P grad F(exp_x(h d/|d|)) - grad F(x)), with P the transport back along the step
Tangents fd_hessian_vec(const CgProblem& f, const DiscreteCurve& x, const Tangents& gx, const Tangents& dir, double h);

class Objective final : public CgProblem {
public:
    explicit Objective(ObjectiveConfig cfg);

    const ObjectiveConfig& config() const { return cfg_; }
    const SpectralBasis& basis() const { return *basis_; }

    // sum_k alpha_k |mu_k - nu_k|^2 of the empirical measure of x
    double data_term(const DiscreteCurve& x) const;
    double penalty(const DiscreteCurve& x) const;
    double value(const DiscreteCurve& x) const override;
    Tangents gradient(const DiscreteCurve& x) const override;
    double value_and_gradient(const DiscreteCurve& x, Tangents& g) const override;
    double fd_step() const override { return cfg_.fd_step; }

private:
    void check(const DiscreteCurve& x) const;
    double data_from(const std::vector<cplx>& nu) const;
    void penalty_gradient(const DiscreteCurve& x, Tangents& g) const;

    ObjectiveConfig cfg_;
    std::shared_ptr<const SpectralBasis> basis_;
};

double discrepancy_sq(const SpectralMeasure& nu, const ObjectiveConfig& cfg);
double penalty(const DiscreteCurve& x, const ObjectiveConfig& cfg);
double objective(const DiscreteCurve& x, const ObjectiveConfig& cfg);
Tangents gradient(const DiscreteCurve& x, const ObjectiveConfig& cfg);
Tangents hessian_vec(const DiscreteCurve& x, const Tangents& dir, const ObjectiveConfig& cfg);

} // namespace curvedis
