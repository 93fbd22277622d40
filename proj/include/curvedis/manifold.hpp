#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "curvedis/errors.hpp"

namespace curvedis {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Rng = std::mt19937_64;

enum class ManifoldKind { Torus, Sphere2, SO3, Grass24 };

// Largest coordinate count of any supported point: a 3x3 rotation, or a torus of dimension 9.
inline constexpr int kMaxCoords = 9;

class ManifoldId {
public:
    ManifoldId() = default;

    static ManifoldId torus(int d);
    static ManifoldId sphere2() { return ManifoldId(ManifoldKind::Sphere2, 0); }
    static ManifoldId so3() { return ManifoldId(ManifoldKind::SO3, 0); }
    static ManifoldId grass24() { return ManifoldId(ManifoldKind::Grass24, 0); }
    static ManifoldId from_tag(const std::string& tag);

    ManifoldKind kind() const { return kind_; }
    int torus_dim() const { return d_; }
    bool is_torus() const { return kind_ == ManifoldKind::Torus; }
    // intrinsic dimension
    int dim() const;
    // number of stored coordinates per point / tangent vector
    int coord_count() const;
    std::string tag() const;

    bool operator==(const ManifoldId&) const = default;

private:
    ManifoldId(ManifoldKind kind, int d) : kind_(kind), d_(d) {}
    ManifoldKind kind_ = ManifoldKind::Sphere2;
    int d_ = 0;
};

void require_same(const ManifoldId& a, const ManifoldId& b);

using Coords = std::array<double, kMaxCoords>;

// Torus: d coordinates in [0,1). Sphere2: unit 3-vector. SO3: row-major 3x3 rotation.
// Grass24: (u, v) with u in c[0..2], v in c[3..5], canonical sign on u.
struct Point {
    ManifoldId manifold;
    Coords c{};

    static Point torus(std::span<const double> x);
    static Point sphere2(const Vec3& x);
    static Point so3(const Mat3& r);

    std::span<const double> coords() const { return {c.data(), static_cast<std::size_t>(manifold.coord_count())}; }
    Vec3 vec3(int offset = 0) const { return {c[offset], c[offset + 1], c[offset + 2]}; }
    Mat3 mat3() const;

    bool operator==(const Point& o) const;
};

// Components live in the same ambient representation as Point and are paired with a base point
// by the caller (SO3: x * Omega with Omega skew; Grass24: one tangent per factor).
struct TangentVector {
    ManifoldId manifold;
    Coords c{};

    static TangentVector zero(const ManifoldId& m) { return TangentVector{m, {}}; }
    static TangentVector from_vec3(const ManifoldId& m, const Vec3& v, int offset = 0);
    static TangentVector from_mat3(const Mat3& v);

    std::span<const double> coords() const { return {c.data(), static_cast<std::size_t>(manifold.coord_count())}; }
    Vec3 vec3(int offset = 0) const { return {c[offset], c[offset + 1], c[offset + 2]}; }
    Mat3 mat3() const;

    TangentVector& operator+=(const TangentVector& o);
    TangentVector& operator-=(const TangentVector& o);
    TangentVector& operator*=(double s);
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a, const TangentVector& b);
TangentVector operator*(double s, TangentVector a);
TangentVector operator-(TangentVector a);

double wrap01(double t);
// representative of t modulo 1 in (-1/2, 1/2]
double wrap_diff(double t);

double inner(const Point& x, const TangentVector& v, const TangentVector& w);
double norm(const Point& x, const TangentVector& v);

double distance(const Point& x, const Point& y);
Point exp_map(const Point& x, const TangentVector& v);
TangentVector log_map(const Point& x, const Point& y);
TangentVector parallel_transport(const Point& x, const TangentVector& v, const TangentVector& w);
std::pair<Point, TangentVector> geodesic_with_velocity(const Point& x, const TangentVector& v, double t);
Point geodesic_midpoint(const Point& x, const Point& y);

// Orthogonal projection of ambient components onto the tangent space at x.
TangentVector project_tangent(const Point& x, const TangentVector& ambient);
// Distance of stored coordinates from the manifold constraints (0 for a valid point).
double manifold_defect(const Point& x);
Point reproject(const Point& x);

Point random_point(const ManifoldId& m, Rng& rng);
TangentVector random_tangent(const Point& x, Rng& rng);

// SO(3) helpers
Mat3 skew(const Vec3& w);
Vec3 vee(const Mat3& a);
Mat3 so3_exp(const Vec3& w);
// rotation vector of r, angle in [0, pi]; errors with cut locus at angle pi
Vec3 so3_log(const Mat3& r);
// unit quaternion (w, x, y, z) with w >= 0
Vec4 so3_to_quaternion(const Mat3& r);
Mat3 quaternion_to_rotation(const Vec4& q);
Point covering_map_s3_to_so3(const Vec4& q);
// body angular velocity of v = x * skew(omega)
Vec3 so3_body(const Point& x, const TangentVector& v);
TangentVector so3_tangent(const Point& x, const Vec3& omega);

// Grassmannian G(2,4) via its double cover S^2 x S^2
Point grass_from_pair(const Vec3& u, const Vec3& v);
Mat4 projector_of(const Point& x);
// principal angles of the two 2-planes, ascending
std::array<double, 2> grass_principal_angles(const Point& x, const Point& y);
double grass_principal_angle_distance(const Point& x, const Point& y);

// unit sphere primitives shared by S^2, S^3 and the Grassmannian factors
namespace sphere {

template <typename V>
double distance(const V& x, const V& y)
{
    return std::atan2((y - x.dot(y) * x).norm(), x.dot(y));
}

template <typename V>
V exp(const V& x, const V& v)
{
    const double t = v.norm();
    if (t == 0.0) return x;
    V y = std::cos(t) * x + (std::sin(t) / t) * v;
    return y / y.norm();
}

template <typename V>
V log(const V& x, const V& y)
{
    const double c = x.dot(y);
    V w = y - c * x;
    const double s = w.norm();
    if (s < 1e-15) {
        if (c < 0.0) throw Error(ErrorKind::CutLocus, "antipodal points on the sphere");
        return V::Zero(x.size());
    }
    return (std::atan2(s, c) / s) * w;
}

template <typename V>
std::pair<V, V> geodesic(const V& x, const V& v, double t)
{
    const double speed = v.norm();
    if (speed == 0.0) return {x, v};
    const V u = v / speed;
    const double a = speed * t;
    V y = std::cos(a) * x + std::sin(a) * u;
    y /= y.norm();
    return {y, speed * (std::cos(a) * u - std::sin(a) * x)};
}

// transport of w along t -> exp(x, t v) to t = 1
template <typename V>
V transport(const V& x, const V& v, const V& w)
{
    const double a = v.norm();
    if (a == 0.0) return w;
    const V u = v / a;
    return w + u.dot(w) * ((std::cos(a) - 1.0) * u - std::sin(a) * x);
}

} // namespace sphere

} // namespace curvedis
