#include <cmath>
#include <numbers>

#include "doctest.h"

#include "curvedis/manifold.hpp"

using namespace curvedis;

namespace {

const double kPi = std::numbers::pi;

Point t2(double a, double b)
{
    const double c[2] = {a, b};
    return Point::torus(c);
}

TangentVector tv2(double a, double b)
{
    TangentVector v = TangentVector::zero(ManifoldId::torus(2));
    v.c[0] = a;
    v.c[1] = b;
    return v;
}

Point rot_z(double a) { return Point::so3(so3_exp(Vec3(0, 0, a))); }

const ManifoldId all_manifolds[] = {ManifoldId::torus(2), ManifoldId::torus(3), ManifoldId::sphere2(), ManifoldId::so3(),
                                    ManifoldId::grass24()};

} // namespace

TEST_CASE("manifold ids")
{
    CHECK(ManifoldId::from_tag("torus3") == ManifoldId::torus(3));
    CHECK(ManifoldId::from_tag("grass24").dim() == 4);
    CHECK(ManifoldId::so3().dim() == 3);
    CHECK_THROWS_AS(ManifoldId::torus(0), Error);
    CHECK_THROWS_AS(ManifoldId::from_tag("klein"), Error);
    for (const auto& m : all_manifolds) CHECK(ManifoldId::from_tag(m.tag()) == m);
}

TEST_CASE("distance examples")
{
    CHECK(distance(t2(0, 0), t2(0.5, 0.5)) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    CHECK(distance(Point::sphere2(Vec3::UnitX()), Point::sphere2(Vec3::UnitY())) == doctest::Approx(kPi / 2));
    CHECK(distance(Point::so3(Mat3::Identity()), rot_z(kPi)) == doctest::Approx(kPi / 2));
    // (e1, e1) spans {e1, e2} and (e2, e2) spans {e1, e3} in R^4
    const Point a = grass_from_pair(Vec3::UnitX(), Vec3::UnitX()), b = grass_from_pair(Vec3::UnitY(), Vec3::UnitY());
    Mat4 p1 = Mat4::Zero(), p2 = Mat4::Zero();
    p1(0, 0) = p1(1, 1) = 1.0;
    p2(0, 0) = p2(2, 2) = 1.0;
    CHECK((projector_of(a) - p1).norm() < 1e-14);
    CHECK((projector_of(b) - p2).norm() < 1e-14);
    CHECK(distance(a, b) == doctest::Approx(kPi / std::sqrt(2.0)));
    // principal angles from the singular values of the projector product
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Point x = random_point(ManifoldId::grass24(), rng), y = random_point(ManifoldId::grass24(), rng);
        const Eigen::JacobiSVD<Mat4> svd(projector_of(x) * projector_of(y));
        const auto sv = svd.singularValues();
        const double th1 = std::acos(std::min(1.0, sv[0])), th2 = std::acos(std::min(1.0, sv[1]));
        CHECK(distance(x, y) == doctest::Approx(std::sqrt(2.0) * std::hypot(th1, th2)).epsilon(1e-6));
    }
}

TEST_CASE("distance manifold mismatch")
{
    CHECK_THROWS_AS(distance(t2(0, 0), Point::sphere2(Vec3::UnitX())), Error);
}

TEST_CASE("exp map examples")
{
    const Point y = exp_map(t2(0.9, 0.9), tv2(0.2, 0.2));
    CHECK(y.c[0] == doctest::Approx(0.1));
    CHECK(y.c[1] == doctest::Approx(0.1));
    const Point n = Point::sphere2(Vec3::UnitZ());
    const Point s = exp_map(n, TangentVector::from_vec3(ManifoldId::sphere2(), kPi * Vec3::UnitX()));
    CHECK((s.vec3() + Vec3::UnitZ()).norm() < 1e-12);
    const double th = 0.8;
    const Point r = exp_map(Point::so3(Mat3::Identity()), TangentVector::from_mat3(skew(Vec3(0, 0, th))));
    const Mat3 want = Eigen::AngleAxisd(th, Vec3::UnitZ()).toRotationMatrix();
    CHECK((r.mat3() - want).norm() < 1e-12);
}

TEST_CASE("log map examples")
{
    const double a = 0.1, b = 0.9;
    const TangentVector v = log_map(Point::torus(std::span<const double>(&a, 1)), Point::torus(std::span<const double>(&b, 1)));
    CHECK(v.c[0] == doctest::Approx(-0.2));
    const Point n = Point::sphere2(Vec3::UnitZ());
    const TangentVector w = log_map(n, Point::sphere2(Vec3::UnitX()));
    CHECK((w.vec3() - kPi / 2 * Vec3::UnitX()).norm() < 1e-12);
    CHECK(norm(n, w) == doctest::Approx(kPi / 2));
    try {
        log_map(n, Point::sphere2(-Vec3::UnitZ()));
        FAIL("expected cut locus");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CutLocus);
    }
}

TEST_CASE("parallel transport examples")
{
    const TangentVector v = tv2(0.3, -0.7), w = tv2(0.11, 0.5);
    const TangentVector pw = parallel_transport(t2(0.2, 0.4), v, w);
    CHECK(pw.c[0] == w.c[0]);
    CHECK(pw.c[1] == w.c[1]);
    const Point n = Point::sphere2(Vec3::UnitZ());
    const TangentVector q = parallel_transport(n, TangentVector::from_vec3(ManifoldId::sphere2(), kPi / 2 * Vec3::UnitX()),
                                               TangentVector::from_vec3(ManifoldId::sphere2(), 0.4 * Vec3::UnitY()));
    CHECK((q.vec3() - 0.4 * Vec3::UnitY()).norm() < 1e-12);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const Point x = random_point(ManifoldId::sphere2(), rng);
        const TangentVector vv = random_tangent(x, rng), ww = random_tangent(x, rng);
        const Point y = exp_map(x, vv);
        CHECK(norm(y, parallel_transport(x, vv, ww)) == doctest::Approx(norm(x, ww)).epsilon(1e-10));
    }
}

TEST_CASE("geodesic with velocity")
{
    Rng rng(2);
    for (const auto& m : all_manifolds) {
        const Point x = random_point(m, rng);
        const TangentVector v = random_tangent(x, rng);
        const auto [x0, v0] = geodesic_with_velocity(x, v, 0.0);
        CHECK(distance(x0, x) < 1e-12);
        CHECK(norm(x0, v0 - v) < 1e-12);
        const auto [xt, vt] = geodesic_with_velocity(x, v, 0.37);
        CHECK(norm(xt, vt) == doctest::Approx(norm(x, v)).epsilon(1e-12));
        if (m.is_torus()) CHECK(distance(geodesic_with_velocity(x, v, 1.0).first, exp_map(x, v)) < 1e-14);
    }
}

TEST_CASE("covering map")
{
    CHECK((covering_map_s3_to_so3(Vec4(1, 0, 0, 0)).mat3() - Mat3::Identity()).norm() < 1e-14);
    const Mat3 rz = Eigen::AngleAxisd(kPi, Vec3::UnitZ()).toRotationMatrix();
    CHECK((covering_map_s3_to_so3(Vec4(0, 0, 0, 1)).mat3() - rz).norm() < 1e-14);
    CHECK_THROWS_AS(covering_map_s3_to_so3(Vec4(1, 1, 0, 0)), Error);
    Rng rng(4);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        Vec4 q(g(rng), g(rng), g(rng), g(rng));
        q.normalize();
        const Mat3 a = covering_map_s3_to_so3(q).mat3();
        CHECK((a - covering_map_s3_to_so3(-q).mat3()).norm() < 1e-14);
        CHECK((a.transpose() * a - Mat3::Identity()).norm() < 1e-12);
        CHECK(a.determinant() == doctest::Approx(1.0));
        // Eigen's quaternion as the oracle
        const Mat3 e = Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
        CHECK((a - e).norm() < 1e-12);
    }
}

TEST_CASE("grassmannian pairs")
{
    const Mat4 p = projector_of(grass_from_pair(Vec3::UnitZ(), Vec3::UnitZ()));
    CHECK(p.trace() == doctest::Approx(2.0));
    CHECK_THROWS_AS(grass_from_pair(Vec3(1, 1, 0), Vec3::UnitZ()), Error);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Point x = random_point(ManifoldId::sphere2(), rng), y = random_point(ManifoldId::sphere2(), rng);
        const Vec3 u = x.vec3(), v = y.vec3();
        const Point a = grass_from_pair(u, v), b = grass_from_pair(-u, -v);
        CHECK(a == b);
        const Mat4 q = projector_of(a);
        CHECK((q * q - q).norm() < 1e-10);
        CHECK((q - q.transpose()).norm() < 1e-12);
        CHECK(q.trace() == doctest::Approx(2.0));
        CHECK(Eigen::FullPivLU<Mat4>(q).rank() == 2);
    }
}

TEST_CASE("triangle inequality")
{
    Rng rng(6);
    for (const auto& m : all_manifolds)
        for (int i = 0; i < 1000; ++i) {
            const Point x = random_point(m, rng), y = random_point(m, rng), z = random_point(m, rng);
            CHECK(distance(x, z) <= distance(x, y) + distance(y, z) + 1e-12);
        }
}

TEST_CASE("exp log round trip")
{
    Rng rng(7);
    for (const auto& m : all_manifolds)
        for (int i = 0; i < 200; ++i) {
            const Point x = random_point(m, rng), y = random_point(m, rng);
            TangentVector v;
            try {
                v = log_map(x, y);
            } catch (const Error&) {
                continue;
            }
            CHECK(distance(exp_map(x, v), y) < 1e-9);
            CHECK(norm(x, v) == doctest::Approx(distance(x, y)).epsilon(1e-9));
        }
}

TEST_CASE("geodesic additivity")
{
    Rng rng(8);
    for (const auto& m : all_manifolds)
        for (int i = 0; i < 50; ++i) {
            const Point x = random_point(m, rng);
            const TangentVector v = random_tangent(x, rng);
            const double s = 0.3, t = 0.45;
            const auto [y, vy] = geodesic_with_velocity(x, v, s);
            const Point z = exp_map(y, t * vy);
            CHECK(distance(z, exp_map(x, (s + t) * v)) < 1e-9);
            // transported velocity agrees with the geodesic velocity
            const TangentVector pv = parallel_transport(x, s * v, v);
            CHECK(norm(y, pv - vy) < 1e-9);
        }
}

TEST_CASE("transport preserves inner products")
{
    Rng rng(9);
    for (const auto& m : all_manifolds)
        for (int i = 0; i < 100; ++i) {
            const Point x = random_point(m, rng);
            const TangentVector v = random_tangent(x, rng), a = random_tangent(x, rng), b = random_tangent(x, rng);
            const Point y = exp_map(x, v);
            CHECK(inner(y, parallel_transport(x, v, a), parallel_transport(x, v, b)) ==
                  doctest::Approx(inner(x, a, b)).epsilon(1e-10));
        }
}

TEST_CASE("grassmannian sign invariance")
{
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        const Vec3 u1 = random_point(ManifoldId::sphere2(), rng).vec3(), v1 = random_point(ManifoldId::sphere2(), rng).vec3();
        const Vec3 u2 = random_point(ManifoldId::sphere2(), rng).vec3(), v2 = random_point(ManifoldId::sphere2(), rng).vec3();
        const double d = distance(grass_from_pair(u1, v1), grass_from_pair(u2, v2));
        CHECK(distance(grass_from_pair(-u1, -v1), grass_from_pair(u2, v2)) == doctest::Approx(d).epsilon(1e-12));
        CHECK(distance(grass_from_pair(u1, v1), grass_from_pair(-u2, -v2)) == doctest::Approx(d).epsilon(1e-12));
        CHECK(grass_principal_angle_distance(grass_from_pair(u1, v1), grass_from_pair(u2, v2)) ==
              doctest::Approx(d).epsilon(1e-8));
    }
}

TEST_CASE("tangent space constraints")
{
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Point s = random_point(ManifoldId::sphere2(), rng);
        CHECK(std::abs(random_tangent(s, rng).vec3().dot(s.vec3())) < 1e-12);
        const Point r = random_point(ManifoldId::so3(), rng);
        const Mat3 w = r.mat3().transpose() * random_tangent(r, rng).mat3();
        CHECK((w + w.transpose()).norm() < 1e-10);
        const Point g = random_point(ManifoldId::grass24(), rng);
        const TangentVector gv = random_tangent(g, rng);
        CHECK(std::abs(gv.vec3(0).dot(g.vec3(0))) < 1e-12);
        CHECK(std::abs(gv.vec3(3).dot(g.vec3(3))) < 1e-12);
        CHECK(manifold_defect(g) < 1e-12);
    }
}
