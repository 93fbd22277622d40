#pragma once

#include <string>
#include <vector>

#include "curvedis/objective.hpp"

namespace curvedis {

struct VerifyCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;

    bool passed() const;
    std::string to_json() const;
};

// max over random directions of |<grad F, v> - central difference| / max(|<grad F, v>|, |difference|, 1e-12)
double gradient_fd_error(const Objective& f, const DiscreteCurve& x, int directions, double h, Rng& rng);

// suite: "quadrature", "gradient", "kernel", "gamma-proxy"; seeds are fixed at 0
VerifyReport run_verify(const std::string& suite);
std::vector<std::string> verify_suites();

} // namespace curvedis
