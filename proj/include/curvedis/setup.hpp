#pragma once

#include <string>

#include "curvedis/experiment.hpp"
#include "curvedis/io.hpp"

namespace curvedis {

// kernel smoothness and support dimension of the shipped experiments, by manifold
struct Smoothness {
    double s = 1.5;
    int support_dim = 2;
};
Smoothness default_smoothness(const ManifoldId& m);

// Builds a target measure at degree r; stored measures and images may come back at a lower degree,
// the missing coefficients count as zero.
// spec: "uniform", "doughnut", "doughnut_haar", or a file (.json measure, .pgm image on T^2,
// a sphere grid on S^2, a point list of Gaussian centers on T^d).
struct MeasureOptions {
    bool invert = false;
    double sharpness = 30000.0;
    int grid = 256;
};
SpectralMeasure build_measure(const std::string& spec, const ManifoldId& m, int r, const MeasureOptions& opt = {});

struct ExperimentSetup {
    std::string name;
    ManifoldId manifold;
    SpectralMeasure mu;
    ContinuationSchedule schedule;
    DiscreteCurve x0;
    CgConfig cg;
    Smoothness smooth;
};

// Relative paths in the config resolve against base_dir.
ExperimentSetup load_experiment(const Config& cfg, const std::string& base_dir);
ExperimentSetup load_experiment_file(const std::string& path);

// small random geodesic perturbation of every point; seed 0 returns c unchanged
DiscreteCurve jitter(const DiscreteCurve& c, std::uint64_t seed, double scale = 1e-3);

} // namespace curvedis
