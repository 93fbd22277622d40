#pragma once

#include <string>
#include <vector>

#include "curvedis/objective.hpp"

namespace curvedis {

class CgConfig {
public:
    CgConfig() = default;
    // throws InvalidArgument unless 0 < a < 1/2, 0 < b < 1 and the caps are sane
    CgConfig(int k_max, double armijo_a, double armijo_b, int armijo_k_max, int restart_extra);

    int k_max = 100;
    double armijo_a = 0.05;
    double armijo_b = 0.5;
    int armijo_k_max = 50;
    int restart_extra = 0;   // forced steepest-descent restarts spread evenly over the run
    double grad_tol = 1e-12;

    void validate() const;
};

struct CgRecord {
    int iter = 0;
    double value = 0.0;
    double grad_norm = 0.0;
    double tau = 0.0;
    double beta = 0.0;
    bool restart = false;
    int reprojected = 0;
};

struct CgTrace {
    std::vector<CgRecord> records;   // records[0] is the start point
    std::string termination;

    bool monotone() const;
    std::string to_csv() const;
};

struct CgResult {
    DiscreteCurve curve;
    CgTrace trace;
};

// Armijo backtracking from tau0 = |<d,g>/<d,Hd>| (1 when the curvature vanishes)
double armijo_step(const CgProblem& f, const DiscreteCurve& x, double fx, const Tangents& g, const Tangents& d,
                   const Tangents& hd, const CgConfig& cfg);

CgResult cg_minimize(const CgProblem& f, const DiscreteCurve& x0, const CgConfig& cfg);

} // namespace curvedis
