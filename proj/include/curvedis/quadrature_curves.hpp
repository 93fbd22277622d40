#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "curvedis/curve.hpp"
#include "curvedis/measures.hpp"

namespace curvedis {

using VecX = Eigen::VectorXd;

// Torus: coordinates in [0,1)^d. Sphere: unit vectors in R^{dim+1}.
// SO3Lift: unit quaternions (w, x, y, z) pushed through the covering map.
enum class CurveSpace { Torus, Sphere, SO3Lift };

struct CurveSegment {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;
    double t0 = 0.0, t1 = 0.0;
    // Line: a + s v (wrapped). Arc: center + radius (cos th e1 + sin th e2), th = th0 + s (th1 - th0).
    VecX a, v;
    VecX center, e1, e2;
    double radius = 0.0, th0 = 0.0, th1 = 0.0;
    int circle = -1;   // index into AnalyticCurve::circles

    double length() const;
    double speed() const { return length() / (t1 - t0); }
    // s in [0,1] local to the segment
    VecX eval(double s) const;
};

struct CircleInfo {
    VecX center, e1, e2;
    double radius = 0.0;
    double mass = 0.0;   // parameter share of the whole circle
};

class AnalyticCurve {
public:
    CurveSpace space = CurveSpace::Torus;
    int dim = 2;
    std::vector<CurveSegment> segments;
    std::vector<CircleInfo> circles;

    // throws Unsupported for spheres other than S^2
    ManifoldId manifold() const;
    std::size_t segment_index(double t) const;
    VecX ambient(double t) const;
    Point point(double t) const;
    Point to_point(const VecX& a) const;
    double lipschitz() const;
    double length() const;
    // partition of [0,1], continuity and closure
    void validate(double tol = 1e-12) const;
};

struct DensityPiece {
    double t0 = 0.0, t1 = 0.0;
    std::function<double(double)> rho;
};

struct CurveDensity {
    std::vector<DensityPiece> pieces;
    double lipschitz = 0.0;

    double operator()(double t) const;
    double integral() const;
};

CurveDensity constant_density(const AnalyticCurve& c);

// Euler circuit of an undirected multigraph (self-loops allowed) starting at vertex 0.
// Returns (edge id, traversed backwards) in order; throws GraphInvalid on odd degree or disconnection.
std::vector<std::pair<int, bool>> euler_circuit(int vertices, const std::vector<std::pair<int, int>>& edges);

AnalyticCurve torus_quadrature_curve(int d, int r);
AnalyticCurve sphere2_quadrature_curve(int r);
std::pair<AnalyticCurve, CurveDensity> sphere_d_curve_with_density(int d, int r);
std::pair<AnalyticCurve, CurveDensity> so3_quadrature_curve(int r);

// Gauss-Legendre nodes over the density pieces (or the segments when rho is null).
// visit(ambient point, weight) with weights summing to int rho.
void integrate_curve(const AnalyticCurve& c, const CurveDensity* rho, int nodes,
                     const std::function<void(const VecX&, double)>& visit);

// int conj(phi_k(gamma(t))) rho(t) dt; torus lines without density use closed-form segment integrals
SpectralMeasure analytic_line_coefficients(const AnalyticCurve& c, int r, const CurveDensity* rho = nullptr);
// every full circle integrated with an equispaced rule of the given size, weighted by its mass
SpectralMeasure circle_rule_coefficients(const AnalyticCurve& c, int r, int nodes);

// gamma o g^{-1} with g(t) = (1/beta) int_0^t rho
class Reparametrized {
public:
    Reparametrized(AnalyticCurve c, CurveDensity rho);

    const AnalyticCurve& base() const { return curve_; }
    double g(double t) const;
    double g_inverse(double s) const;
    VecX ambient(double s) const { return curve_.ambient(g_inverse(s)); }
    Point point(double s) const { return curve_.point(g_inverse(s)); }
    // s-values where the pieces of rho start, plus 1
    const std::vector<double>& breakpoints() const { return s_breaks_; }
    // int_0^1 conj(phi_k(gamma(g^{-1}(s)))) ds by tanh-sinh quadrature in s
    SpectralMeasure lebesgue_coefficients(int r) const;

private:
    double piece_mass(std::size_t p, double t) const;

    AnalyticCurve curve_;
    CurveDensity rho_;
    double beta_ = 1.0;
    std::vector<double> cum_;        // cumulative mass at piece starts
    std::vector<double> s_breaks_;
};

Reparametrized reparametrize_constant_speed(const AnalyticCurve& c, const CurveDensity& rho);

// x_i = gamma(i/N), i = 0..N-1
DiscreteCurve discretize(const AnalyticCurve& c, int n);
DiscreteCurve discretize(const Reparametrized& c, int n);

} // namespace curvedis
