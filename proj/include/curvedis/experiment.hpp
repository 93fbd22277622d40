#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "curvedis/cg.hpp"

namespace curvedis {

struct Stage {
    double L = 0.0;
    int N = 0;
    int r = 0;
    double lambda = 0.0;
};

// ii) of the heuristic: re-solve every stage curve with larger lambda and N
struct PolishRule {
    bool enabled = false;
    double lambda_factor = 100.0;
    int n_factor = 2;
    double l_factor = 1.0;
    int restarts = 1;              // -1: as many restarts as the stage index
};

struct ContinuationSchedule {
    std::vector<Stage> stages;
    bool midpoint_refine = true;
    PolishRule polish;
    // degree at which D^2 is reported; 0 means each stage's own r
    int eval_degree = 0;

    void validate() const;
};

// L_i = L0 c^i, lambda_i = lc L_i^le, N_i = round(nc L_i^ne), r_i = floor(rc L_i^re) + r_offset
struct ScheduleLaw {
    double L0 = 4.0;
    double ladder = std::sqrt(2.0);
    int stages = 4;
    double lambda_c = 100.0, lambda_exp = -5.0;
    double n_c = 6.0, n_exp = 2.0;
    double r_c = 2.0, r_exp = 1.0;
    int r_offset = 0;
    PolishRule polish;
};

ContinuationSchedule build_schedule(const ScheduleLaw& law);

// scaling laws for a measure of support dimension d_mu with kernel smoothness s;
// reproduces the shipped experiment constants when (m, d_mu, s) matches one of them
ScheduleLaw default_law(const ManifoldId& m, int d_mu, double s, double L0, int stages);
ContinuationSchedule default_schedule(const ManifoldId& m, int d_mu, double s, double L0, int stages);
double lambda_exponent(int d, int d_mu, double s);

// "torus2", "torus3", "sphere2", "so3", "grass24"
ScheduleLaw experiment_law(const std::string& name);
DiscreteCurve experiment_initial_curve(const std::string& name, int n);

struct StageResult {
    int index = 0;
    bool polish = false;
    Stage stage;
    DiscreteCurve curve;
    double disc_sq = 0.0;
    double length = 0.0;
    double max_speed = 0.0;
    CgTrace trace;
    std::string error;   // empty on success
};

struct ContinuationOptions {
    CgConfig cg;
    Exec exec = Exec::Parallel;
    std::function<void(const StageResult&)> on_stage;
};

// x_{i-1}, mid(x_{i-1}, x_i), x_i, ... along geodesics
DiscreteCurve midpoint_refine(const DiscreteCurve& c);
// n points equally spaced in arclength along the geodesic polygon, starting at c[0]
DiscreteCurve resample(const DiscreteCurve& c, int n);

std::vector<StageResult> run_continuation(const SpectralMeasure& mu, const ContinuationSchedule& sched,
                                          const DiscreteCurve& x0, const ContinuationOptions& opt);

// squared discrepancy of the empirical measure of c, kernel truncated at degree r
double empirical_disc_sq(const SpectralMeasure& mu, const DiscreteCurve& c, int r, Exec exec = Exec::Parallel);

// least-squares slope of log y against log x; 0 for a constant table
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct DecayRow {
    double L = 0.0, disc_sq = 0.0, length = 0.0, max_speed = 0.0;
};

struct DecayTable {
    std::vector<DecayRow> rows;
    double slope_vs_L = 0.0;
    double slope_vs_length = 0.0;
    double reference = 0.0;   // -2s / (d_mu - 1)

    std::string to_csv() const;
};

// rows come from the polished stages when the schedule polishes, else from the ladder
DecayTable decay_table(const std::vector<StageResult>& results, double s, int d_mu);
DecayTable decay_experiment(const SpectralMeasure& mu, const ContinuationSchedule& sched, const DiscreteCurve& x0,
                            const ContinuationOptions& opt, double s, int d_mu,
                            std::vector<StageResult>* results = nullptr);

} // namespace curvedis
