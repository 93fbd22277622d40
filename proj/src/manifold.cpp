#include "curvedis/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvedis {

ManifoldId ManifoldId::torus(int d)
{
    if (d < 1 || d > kMaxCoords) throw Error(ErrorKind::InvalidArgument, "torus dimension must lie in 1..9");
    return ManifoldId(ManifoldKind::Torus, d);
}

ManifoldId ManifoldId::from_tag(const std::string& tag)
{
    if (tag == "sphere2") return sphere2();
    if (tag == "so3") return so3();
    if (tag == "grass24") return grass24();
    if (tag.rfind("torus", 0) == 0 && tag.size() > 5) {
        try {
            return torus(std::stoi(tag.substr(5)));
        } catch (const std::logic_error&) {
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown manifold tag '" + tag + "'");
}

int ManifoldId::dim() const
{
    switch (kind_) {
    case ManifoldKind::Torus: return d_;
    case ManifoldKind::Sphere2: return 2;
    case ManifoldKind::SO3: return 3;
    case ManifoldKind::Grass24: return 4;
    }
    return 0;
}

int ManifoldId::coord_count() const
{
    switch (kind_) {
    case ManifoldKind::Torus: return d_;
    case ManifoldKind::Sphere2: return 3;
    case ManifoldKind::SO3: return 9;
    case ManifoldKind::Grass24: return 6;
    }
    return 0;
}

std::string ManifoldId::tag() const
{
    switch (kind_) {
    case ManifoldKind::Torus: return "torus" + std::to_string(d_);
    case ManifoldKind::Sphere2: return "sphere2";
    case ManifoldKind::SO3: return "so3";
    case ManifoldKind::Grass24: return "grass24";
    }
    return "";
}

void require_same(const ManifoldId& a, const ManifoldId& b)
{
    if (!(a == b)) throw Error(ErrorKind::ManifoldMismatch, a.tag() + " vs " + b.tag());
}

double wrap01(double t)
{
    double r = t - std::floor(t);
    return r >= 1.0 ? 0.0 : r;
}

double wrap_diff(double t)
{
    return t - std::ceil(t - 0.5);
}

namespace {

Mat3 mat_from(const Coords& c)
{
    Mat3 m;
    m << c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8];
    return m;
}

void store_mat(Coords& c, const Mat3& m)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[3 * i + j] = m(i, j);
}

void store_vec(Coords& c, const Vec3& v, int offset)
{
    c[offset] = v[0];
    c[offset + 1] = v[1];
    c[offset + 2] = v[2];
}

// flips (u, v) so the first nonzero coordinate of u is positive; returns true if flipped
bool canonicalize_pair(Vec3& u, Vec3& v)
{
    for (int i = 0; i < 3; ++i) {
        if (u[i] != 0.0) {
            if (u[i] < 0.0) {
                u = -u;
                v = -v;
                return true;
            }
            return false;
        }
    }
    return false;
}

Point make_grass(Vec3 u, Vec3 v)
{
    canonicalize_pair(u, v);
    Point p{ManifoldId::grass24(), {}};
    store_vec(p.c, u, 0);
    store_vec(p.c, v, 3);
    return p;
}

} // namespace

Point Point::torus(std::span<const double> x)
{
    Point p{ManifoldId::torus(static_cast<int>(x.size())), {}};
    for (std::size_t i = 0; i < x.size(); ++i) p.c[i] = wrap01(x[i]);
    return p;
}

Point Point::sphere2(const Vec3& x)
{
    if (std::abs(x.norm() - 1.0) > 1e-12) throw Error(ErrorKind::NonUnitInput, "sphere point must have unit norm");
    Point p{ManifoldId::sphere2(), {}};
    store_vec(p.c, x, 0);
    return p;
}

Point Point::so3(const Mat3& r)
{
    if ((r.transpose() * r - Mat3::Identity()).norm() > 1e-10 || std::abs(r.determinant() - 1.0) > 1e-10)
        throw Error(ErrorKind::InvalidArgument, "matrix is not a rotation");
    Point p{ManifoldId::so3(), {}};
    store_mat(p.c, r);
    return p;
}

Mat3 Point::mat3() const { return mat_from(c); }

bool Point::operator==(const Point& o) const
{
    if (!(manifold == o.manifold)) return false;
    const int n = manifold.coord_count();
    return std::equal(c.begin(), c.begin() + n, o.c.begin());
}

TangentVector TangentVector::from_vec3(const ManifoldId& m, const Vec3& v, int offset)
{
    TangentVector t{m, {}};
    store_vec(t.c, v, offset);
    return t;
}

TangentVector TangentVector::from_mat3(const Mat3& v)
{
    TangentVector t{ManifoldId::so3(), {}};
    store_mat(t.c, v);
    return t;
}

Mat3 TangentVector::mat3() const { return mat_from(c); }

TangentVector& TangentVector::operator+=(const TangentVector& o)
{
    for (int i = 0; i < kMaxCoords; ++i) c[i] += o.c[i];
    return *this;
}

TangentVector& TangentVector::operator-=(const TangentVector& o)
{
    for (int i = 0; i < kMaxCoords; ++i) c[i] -= o.c[i];
    return *this;
}

TangentVector& TangentVector::operator*=(double s)
{
    for (double& x : c) x *= s;
    return *this;
}

TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }
TangentVector operator-(TangentVector a, const TangentVector& b) { return a -= b; }
TangentVector operator*(double s, TangentVector a) { return a *= s; }
TangentVector operator-(TangentVector a) { return a *= -1.0; }

double inner(const Point& x, const TangentVector& v, const TangentVector& w)
{
    const int n = x.manifold.coord_count();
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += v.c[i] * w.c[i];
    // SO(3) carries the metric of its double cover S^3: |x skew(w)| = |w| / 2
    return x.manifold.kind() == ManifoldKind::SO3 ? s / 8.0 : s;
}

double norm(const Point& x, const TangentVector& v) { return std::sqrt(inner(x, v, v)); }

Mat3 skew(const Vec3& w)
{
    Mat3 m;
    m << 0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0;
    return m;
}

Vec3 vee(const Mat3& a)
{
    return {0.5 * (a(2, 1) - a(1, 2)), 0.5 * (a(0, 2) - a(2, 0)), 0.5 * (a(1, 0) - a(0, 1))};
}

Mat3 so3_exp(const Vec3& w)
{
    const double t = w.norm();
    const Mat3 k = skew(w);
    double a, b;
    if (t < 1e-6) {
        const double t2 = t * t;
        a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
        a = std::sin(t) / t;
        b = (1.0 - std::cos(t)) / (t * t);
    }
    return Mat3::Identity() + a * k + b * k * k;
}

Vec4 so3_to_quaternion(const Mat3& r)
{
    const double tr = r.trace();
    Vec4 q;
    if (tr > 0.0) {
        const double s = 2.0 * std::sqrt(tr + 1.0);
        q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s;
    } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
        const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
        q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s;
    } else if (r(1, 1) > r(2, 2)) {
        const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
        q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s;
    } else {
        const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
        q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s;
    }
    if (q[0] < 0.0) q = -q;
    return q / q.norm();
}

Mat3 quaternion_to_rotation(const Vec4& q)
{
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

Vec3 so3_log(const Mat3& r)
{
    const Vec4 q = so3_to_quaternion(r);
    const Vec3 v(q[1], q[2], q[3]);
    const double n = v.norm();
    if (q[0] < 1e-14) throw Error(ErrorKind::CutLocus, "rotation by pi has no unique logarithm");
    if (n == 0.0) return Vec3::Zero();
    return (2.0 * std::atan2(n, q[0]) / n) * v;
}

Point covering_map_s3_to_so3(const Vec4& q)
{
    if (std::abs(q.norm() - 1.0) > 1e-12) throw Error(ErrorKind::NonUnitInput, "quaternion must have unit norm");
    Point p{ManifoldId::so3(), {}};
    store_mat(p.c, quaternion_to_rotation(q));
    return p;
}

Vec3 so3_body(const Point& x, const TangentVector& v)
{
    return vee(x.mat3().transpose() * v.mat3());
}

TangentVector so3_tangent(const Point& x, const Vec3& omega)
{
    return TangentVector::from_mat3(x.mat3() * skew(omega));
}

Point grass_from_pair(const Vec3& u, const Vec3& v)
{
    if (std::abs(u.norm() - 1.0) > 1e-12 || std::abs(v.norm() - 1.0) > 1e-12)
        throw Error(ErrorKind::NonUnitInput, "Grassmannian pair must consist of unit vectors");
    return make_grass(u, v);
}

Mat4 projector_of(const Point& x)
{
    require_same(x.manifold, ManifoldId::grass24());
    const Vec3 u = x.vec3(0), v = x.vec3(3);
    const double uv = u.dot(v);
    const Vec3 c = u.cross(v);
    Mat4 p;
    p(0, 0) = 1.0 + uv;
    p.block<1, 3>(0, 1) = -c.transpose();
    p.block<3, 1>(1, 0) = -c;
    p.block<3, 3>(1, 1) = u * v.transpose() + v * u.transpose() + (1.0 - uv) * Mat3::Identity();
    return 0.5 * p;
}

std::array<double, 2> grass_principal_angles(const Point& x, const Point& y)
{
    const Mat4 px = projector_of(x), py = projector_of(y);
    Eigen::SelfAdjointEigenSolver<Mat4> ex(px), ey(py);
    // eigenvalues ascending: the last two columns span the plane
    const Eigen::Matrix<double, 4, 2> bx = ex.eigenvectors().rightCols<2>();
    const Eigen::Matrix<double, 4, 2> by = ey.eigenvectors().rightCols<2>();
    const Eigen::Vector2d cosines = Eigen::JacobiSVD<Eigen::Matrix2d>(bx.transpose() * by).singularValues();
    const Eigen::Vector2d sines =
        Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>>((Mat4::Identity() - px) * by).singularValues();
    // cosines descending pair with sines ascending
    std::array<double, 2> th{std::atan2(sines[1], cosines[0]), std::atan2(sines[0], cosines[1])};
    std::sort(th.begin(), th.end());
    return th;
}

double grass_principal_angle_distance(const Point& x, const Point& y)
{
    const auto th = grass_principal_angles(x, y);
    return std::sqrt(2.0) * std::hypot(th[0], th[1]);
}

namespace {

struct GrassLift {
    Vec3 u2, v2;
    double dist;
};

GrassLift nearest_lift(const Point& x, const Point& y)
{
    const Vec3 u = x.vec3(0), v = x.vec3(3);
    const Vec3 u2 = y.vec3(0), v2 = y.vec3(3);
    const double dp = std::hypot(sphere::distance(u, u2), sphere::distance(v, v2));
    const double dm = std::hypot(sphere::distance(u, Vec3(-u2)), sphere::distance(v, Vec3(-v2)));
    if (dp <= dm) return {u2, v2, dp};
    return {-u2, -v2, dm};
}

} // namespace

double distance(const Point& x, const Point& y)
{
    require_same(x.manifold, y.manifold);
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: {
        double s = 0.0;
        for (int i = 0; i < x.manifold.torus_dim(); ++i) {
            const double d = wrap_diff(y.c[i] - x.c[i]);
            s += d * d;
        }
        return std::sqrt(s);
    }
    case ManifoldKind::Sphere2: return sphere::distance(x.vec3(), y.vec3());
    case ManifoldKind::SO3: {
        // half the rotation angle of x^T y, i.e. the distance of the quaternion lifts on S^3
        const Vec4 q = so3_to_quaternion(x.mat3().transpose() * y.mat3());
        return std::atan2(q.tail<3>().norm(), q[0]);
    }
    case ManifoldKind::Grass24: return nearest_lift(x, y).dist;
    }
    return 0.0;
}

Point exp_map(const Point& x, const TangentVector& v)
{
    return geodesic_with_velocity(x, v, 1.0).first;
}

TangentVector log_map(const Point& x, const Point& y)
{
    require_same(x.manifold, y.manifold);
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: {
        TangentVector t = TangentVector::zero(x.manifold);
        for (int i = 0; i < x.manifold.torus_dim(); ++i) {
            const double d = wrap_diff(y.c[i] - x.c[i]);
            if (d == 0.5) throw Error(ErrorKind::CutLocus, "torus coordinate difference of exactly 1/2");
            t.c[i] = d;
        }
        return t;
    }
    case ManifoldKind::Sphere2:
        return TangentVector::from_vec3(x.manifold, sphere::log(x.vec3(), y.vec3()));
    case ManifoldKind::SO3:
        return so3_tangent(x, so3_log(x.mat3().transpose() * y.mat3()));
    case ManifoldKind::Grass24: {
        const Vec3 u = x.vec3(0), v = x.vec3(3);
        const Vec3 u2 = y.vec3(0), v2 = y.vec3(3);
        const double dp = std::hypot(sphere::distance(u, u2), sphere::distance(v, v2));
        const double dm = std::hypot(sphere::distance(u, Vec3(-u2)), sphere::distance(v, Vec3(-v2)));
        if (std::abs(dp - dm) < 1e-13) throw Error(ErrorKind::CutLocus, "both lifts are equidistant");
        const GrassLift lift = nearest_lift(x, y);
        TangentVector t = TangentVector::from_vec3(x.manifold, sphere::log(u, lift.u2), 0);
        const Vec3 b = sphere::log(v, lift.v2);
        t.c[3] = b[0];
        t.c[4] = b[1];
        t.c[5] = b[2];
        return t;
    }
    }
    return TangentVector::zero(x.manifold);
}

std::pair<Point, TangentVector> geodesic_with_velocity(const Point& x, const TangentVector& v, double t)
{
    require_same(x.manifold, v.manifold);
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: {
        Point y = x;
        for (int i = 0; i < x.manifold.torus_dim(); ++i) y.c[i] = wrap01(x.c[i] + t * v.c[i]);
        return {y, v};
    }
    case ManifoldKind::Sphere2: {
        const auto [y, w] = sphere::geodesic(x.vec3(), v.vec3(), t);
        Point p{x.manifold, {}};
        store_vec(p.c, y, 0);
        return {p, TangentVector::from_vec3(x.manifold, w)};
    }
    case ManifoldKind::SO3: {
        const Vec3 omega = so3_body(x, v);
        const Mat3 y = x.mat3() * so3_exp(t * omega);
        Point p{x.manifold, {}};
        store_mat(p.c, y);
        return {p, TangentVector::from_mat3(y * skew(omega))};
    }
    case ManifoldKind::Grass24: {
        auto [u, a] = sphere::geodesic(x.vec3(0), v.vec3(0), t);
        auto [w, b] = sphere::geodesic(x.vec3(3), v.vec3(3), t);
        if (canonicalize_pair(u, w)) {
            a = -a;
            b = -b;
        }
        Point p{x.manifold, {}};
        store_vec(p.c, u, 0);
        store_vec(p.c, w, 3);
        TangentVector vel = TangentVector::from_vec3(x.manifold, a, 0);
        store_vec(vel.c, b, 3);
        return {p, vel};
    }
    }
    return {x, v};
}

TangentVector parallel_transport(const Point& x, const TangentVector& v, const TangentVector& w)
{
    require_same(x.manifold, v.manifold);
    require_same(x.manifold, w.manifold);
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: return w;
    case ManifoldKind::Sphere2:
        return TangentVector::from_vec3(x.manifold, sphere::transport(x.vec3(), v.vec3(), w.vec3()));
    case ManifoldKind::SO3: {
        // left-trivialized transport along x exp(t W): Xi -> exp(-W/2) Xi exp(W/2)
        const Mat3 e = so3_exp(0.5 * so3_body(x, v));
        const Mat3 xi = x.mat3().transpose() * w.mat3();
        return TangentVector::from_mat3(x.mat3() * e * xi * e);
    }
    case ManifoldKind::Grass24: {
        Vec3 a = sphere::transport(x.vec3(0), v.vec3(0), w.vec3(0));
        Vec3 b = sphere::transport(x.vec3(3), v.vec3(3), w.vec3(3));
        Vec3 u = sphere::exp(x.vec3(0), v.vec3(0));
        Vec3 z = sphere::exp(x.vec3(3), v.vec3(3));
        if (canonicalize_pair(u, z)) {
            a = -a;
            b = -b;
        }
        TangentVector out = TangentVector::from_vec3(x.manifold, a, 0);
        store_vec(out.c, b, 3);
        return out;
    }
    }
    return w;
}

Point geodesic_midpoint(const Point& x, const Point& y)
{
    return exp_map(x, 0.5 * log_map(x, y));
}

TangentVector project_tangent(const Point& x, const TangentVector& a)
{
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: return a;
    case ManifoldKind::Sphere2: {
        const Vec3 p = x.vec3(), w = a.vec3();
        return TangentVector::from_vec3(x.manifold, w - p.dot(w) * p);
    }
    case ManifoldKind::SO3: {
        const Mat3 r = x.mat3();
        const Mat3 m = r.transpose() * a.mat3();
        return TangentVector::from_mat3(r * (0.5 * (m - m.transpose())));
    }
    case ManifoldKind::Grass24: {
        const Vec3 u = x.vec3(0), v = x.vec3(3);
        const Vec3 a1 = a.vec3(0), b1 = a.vec3(3);
        TangentVector out = TangentVector::from_vec3(x.manifold, a1 - u.dot(a1) * u, 0);
        store_vec(out.c, b1 - v.dot(b1) * v, 3);
        return out;
    }
    }
    return a;
}

double manifold_defect(const Point& x)
{
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: {
        double d = 0.0;
        for (int i = 0; i < x.manifold.torus_dim(); ++i)
            if (!(x.c[i] >= 0.0 && x.c[i] < 1.0)) d = std::max(d, std::abs(x.c[i] - wrap01(x.c[i])));
        return d;
    }
    case ManifoldKind::Sphere2: return std::abs(x.vec3().norm() - 1.0);
    case ManifoldKind::SO3: {
        const Mat3 r = x.mat3();
        return std::max((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), std::abs(r.determinant() - 1.0));
    }
    case ManifoldKind::Grass24:
        return std::max(std::abs(x.vec3(0).norm() - 1.0), std::abs(x.vec3(3).norm() - 1.0));
    }
    return 0.0;
}

Point reproject(const Point& x)
{
    switch (x.manifold.kind()) {
    case ManifoldKind::Torus: return Point::torus(x.coords());
    case ManifoldKind::Sphere2: {
        Point p{x.manifold, {}};
        store_vec(p.c, x.vec3().normalized(), 0);
        return p;
    }
    case ManifoldKind::SO3: {
        Eigen::JacobiSVD<Mat3> svd(x.mat3(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        Mat3 u = svd.matrixU();
        if ((u * svd.matrixV().transpose()).determinant() < 0.0) u.col(2) = -u.col(2);
        Point p{x.manifold, {}};
        store_mat(p.c, u * svd.matrixV().transpose());
        return p;
    }
    case ManifoldKind::Grass24: return make_grass(x.vec3(0).normalized(), x.vec3(3).normalized());
    }
    return x;
}

namespace {

Vec3 random_unit3(Rng& rng)
{
    std::normal_distribution<double> g;
    Vec3 v;
    do {
        v = Vec3(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-8);
    return v.normalized();
}

} // namespace

Point random_point(const ManifoldId& m, Rng& rng)
{
    switch (m.kind()) {
    case ManifoldKind::Torus: {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Point p{m, {}};
        for (int i = 0; i < m.torus_dim(); ++i) p.c[i] = u(rng);
        return p;
    }
    case ManifoldKind::Sphere2: return Point::sphere2(random_unit3(rng));
    case ManifoldKind::SO3: {
        std::normal_distribution<double> g;
        Vec4 q;
        do {
            q = Vec4(g(rng), g(rng), g(rng), g(rng));
        } while (q.norm() < 1e-8);
        return covering_map_s3_to_so3(q.normalized());
    }
    case ManifoldKind::Grass24: {
        const Vec3 u = random_unit3(rng);
        return make_grass(u, random_unit3(rng));
    }
    }
    return Point{m, {}};
}

TangentVector random_tangent(const Point& x, Rng& rng)
{
    std::normal_distribution<double> g;
    if (x.manifold.kind() == ManifoldKind::SO3) return so3_tangent(x, 2.0 * Vec3(g(rng), g(rng), g(rng)));
    TangentVector t = TangentVector::zero(x.manifold);
    for (int i = 0; i < x.manifold.coord_count(); ++i) t.c[i] = g(rng);
    return project_tangent(x, t);
}

} // namespace curvedis
