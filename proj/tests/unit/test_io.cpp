#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <unistd.h>

#include "doctest.h"

#include "curvedis/export.hpp"
#include "curvedis/io.hpp"
#include "curvedis/verify.hpp"

using namespace curvedis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("curvedis_io_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void spit(const std::string& path, const std::string& s)
{
    std::ofstream(path, std::ios::binary) << s;
}

DiscreteCurve random_curve(const ManifoldId& m, int n, Rng& rng)
{
    DiscreteCurve c{m, {}};
    for (int i = 0; i < n; ++i) c.points.push_back(random_point(m, rng));
    return c;
}

Point t2(double a, double b)
{
    const double c[2] = {a, b};
    return Point::torus(c);
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("curve files round trip")
{
    TempDir tmp;
    Rng rng(4);
    for (const auto& m : {ManifoldId::torus(2), ManifoldId::torus(3), ManifoldId::sphere2(), ManifoldId::so3(),
                          ManifoldId::grass24()}) {
        const DiscreteCurve c = random_curve(m, 9, rng);
        const Json meta = {{"L", 4.5}, {"stage", 2}};
        const std::string path = tmp.file(m.tag() + ".json");
        save_curve(path, c, meta);
        const CurveFile f = load_curve(path);
        CHECK(f.curve.manifold == m);
        CHECK(f.curve.points == c.points);
        CHECK(f.metadata == meta);
    }
    // only the target file is left behind
    CHECK(std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator{}) == 5);

    const Json j = Json::parse(curve_to_json(random_curve(ManifoldId::sphere2(), 3, rng)));
    CHECK(j["manifold"] == "sphere2");
    CHECK(j["N"] == 3);
    CHECK(j["coords"].size() == 9);

    CHECK(kind_of([] { curve_from_json("{not json"); }) == ErrorKind::Io);
    CHECK(kind_of([] { curve_from_json(R"({"manifold":"sphere2","N":1,"coords":[1,0]})"); }) == ErrorKind::Io);
    CHECK(kind_of([] { curve_from_json(R"({"manifold":"sphere2","N":1,"coords":[1,1,0]})"); }) == ErrorKind::Io);
    CHECK_THROWS_AS(curve_from_json(R"({"manifold":"klein","N":0,"coords":[]})"), Error);
    CHECK(kind_of([&] { load_curve(tmp.file("missing.json")); }) == ErrorKind::Io);
}

TEST_CASE("measure files round trip")
{
    TempDir tmp;
    Rng rng(5);
    for (const auto& m : {ManifoldId::torus(2), ManifoldId::sphere2(), ManifoldId::so3(), ManifoldId::grass24()}) {
        const SpectralMeasure mu = empirical_coefficients(random_curve(m, 7, rng), 3);
        save_measure(tmp.file("mu.json"), mu);
        const SpectralMeasure nu = load_measure(tmp.file("mu.json"));
        CHECK(nu.manifold == m);
        CHECK(nu.degree == 3);
        CHECK(nu.coeffs == mu.coeffs);
    }
    const SpectralMeasure sparse = measure_from_json(R"({"manifold":"torus2","degree":1,"coefficients":[{"index":[0,0],"re":1}]})");
    CHECK(sparse.coeffs.size() == 9);
    CHECK(sparse.coeffs[zero_frequency_position(sparse.manifold, 1)] == cplx(1.0));
    CHECK(kind_of([] {
              measure_from_json(R"({"manifold":"torus2","degree":1,"coefficients":[{"index":[2,0],"re":1}]})");
          }) == ErrorKind::Io);
}

TEST_CASE("pgm images")
{
    TempDir tmp;
    Image img;
    img.height = 2;
    img.width = 3;
    img.pixels = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    spit(tmp.file("a.pgm"), pgm_p2(img, 5));
    const Image back = read_pgm(tmp.file("a.pgm"));
    CHECK(back.width == 3);
    CHECK(back.height == 2);
    for (std::size_t i = 0; i < 6; ++i) CHECK(back.pixels[i] == doctest::Approx(img.pixels[i]));
    CHECK(back(1, 2) == 1.0);

    spit(tmp.file("b.pgm"), std::string("P5\n# comment\n2 1\n255\n") + char(0) + char(255));
    const Image raw = read_pgm(tmp.file("b.pgm"));
    CHECK(raw.pixels == std::vector<double>{0.0, 1.0});

    spit(tmp.file("c.pgm"), std::string("P5\n2 2\n255\n") + char(1));
    CHECK(kind_of([&] { read_pgm(tmp.file("c.pgm")); }) == ErrorKind::Io);
    spit(tmp.file("d.pgm"), "P3\n1 1\n255\n0 0 0\n");
    CHECK(kind_of([&] { read_pgm(tmp.file("d.pgm")); }) == ErrorKind::Io);
}

TEST_CASE("grids and point lists")
{
    TempDir tmp;
    spit(tmp.file("g.txt"), "1 2 3\n\n4 5 6\n");
    const SphereGrid g = read_sphere_grid(tmp.file("g.txt"));
    CHECK(g.rows == 2);
    CHECK(g.cols == 3);
    CHECK(g.values == std::vector<double>{1, 2, 3, 4, 5, 6});
    spit(tmp.file("r.txt"), "1 2 3\n4 5\n");
    CHECK(kind_of([&] { read_sphere_grid(tmp.file("r.txt")); }) == ErrorKind::Io);

    spit(tmp.file("p.txt"), "# centers\n0.1 0.2 0.3\n0.5 0.5 0.5  # middle\n");
    const auto pts = read_point_list(tmp.file("p.txt"));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1] == std::vector<double>{0.5, 0.5, 0.5});
    spit(tmp.file("q.txt"), "0.1 0.2 0.3\n0.5 x\n");
    CHECK(kind_of([&] { read_point_list(tmp.file("q.txt")); }) == ErrorKind::Io);
}

TEST_CASE("config parsing")
{
    const Config c = Config::parse(R"(# experiment
name = "torus2"   # trailing comment
tag = "a # b"

[schedule]
L0 = 4.5
stages = 7
polish = true
)");
    CHECK(c.get("name", std::string()) == "torus2");
    CHECK(c.get("tag", std::string()) == "a # b");
    CHECK(c.get("schedule.L0", 0.0) == 4.5);
    CHECK(c.get("schedule.stages", 0) == 7);
    CHECK(c.get("schedule.polish", false));
    CHECK(c.get("schedule.missing", 3) == 3);
    CHECK(c.has("schedule.L0"));
    CHECK(c.require("name") == "torus2");
    CHECK_THROWS_AS(c.require("nope"), Error);
    CHECK_THROWS_AS(c.get("name", 1.0), Error);
    CHECK_THROWS_AS(c.get("schedule.L0", 1), Error);
    CHECK_THROWS_AS(c.get("schedule.stages", false), Error);
    CHECK(kind_of([] { Config::parse("[open\n"); }) == ErrorKind::Io);
    CHECK(kind_of([] { Config::parse("just words\n"); }) == ErrorKind::Io);
}

TEST_CASE("export examples")
{
    CHECK(so3_ball_point(Point::so3(Mat3::Identity())).norm() < 1e-15);
    const Vec3 b = so3_ball_point(Point::so3(so3_exp(Vec3(0, 0, std::numbers::pi))));
    CHECK((b - Vec3(0, 0, 1)).norm() < 1e-12);
    // tan(alpha/4) r
    const Vec3 r = Vec3(1, 2, 2).normalized();
    CHECK((so3_ball_point(Point::so3(so3_exp(1.3 * r))) - std::tan(1.3 / 4.0) * r).norm() < 1e-12);

    const GrassGlyph g = grass_glyph(grass_from_pair(Vec3(1, 0, 0), Vec3(1, 0, 0)));
    CHECK((g.z_plus.cwiseAbs() - Vec3(2, 0, 0)).norm() < 1e-15);
    CHECK((g.z_minus + g.z_plus).norm() < 1e-15);
    const bool plus_first = g.z_plus[0] > 0;
    const Vec3 cp = plus_first ? g.rgb_plus : g.rgb_minus, cm = plus_first ? g.rgb_minus : g.rgb_plus;
    CHECK((cp - Vec3(0, 0.5, 0.5)).norm() < 1e-15);
    CHECK((cm - Vec3(1, 0.5, 0.5)).norm() < 1e-15);
}

TEST_CASE("export formats")
{
    const DiscreteCurve inside{ManifoldId::torus(2), {t2(0.2, 0.2), t2(0.4, 0.2), t2(0.4, 0.4)}};
    const std::string svg = export_visualization(inside, "svg");
    CHECK(svg.find("<svg") == 0);
    std::size_t lines = 0;
    for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
    CHECK(lines == 1);
    // the closing segment wraps across x = 1
    const DiscreteCurve wrap{ManifoldId::torus(2), {t2(0.1, 0.5), t2(0.5, 0.5), t2(0.9, 0.5)}};
    const std::string s2 = torus_svg(wrap, 100.0);
    lines = 0;
    for (std::size_t p = s2.find("<polyline"); p != std::string::npos; p = s2.find("<polyline", p + 1)) ++lines;
    CHECK(lines == 2);
    CHECK(s2.find("100,50") != std::string::npos);
    CHECK(s2.find("0,50") != std::string::npos);

    Rng rng(6);
    CHECK(export_visualization(random_curve(ManifoldId::sphere2(), 4, rng), "csv").rfind("x,y,z\n", 0) == 0);
    CHECK(export_visualization(random_curve(ManifoldId::torus(3), 4, rng), "csv").rfind("x,y,z\n", 0) == 0);
    const std::string so3 = export_visualization(random_curve(ManifoldId::so3(), 4, rng), "csv");
    CHECK(std::count(so3.begin(), so3.end(), '\n') == 5);
    const std::string gr = export_visualization(random_curve(ManifoldId::grass24(), 4, rng), "csv");
    CHECK(gr.rfind("sign,x,y,z,r,g,b\n", 0) == 0);
    CHECK(std::count(gr.begin(), gr.end(), '\n') == 9);
    CHECK(kind_of([&] { export_visualization(random_curve(ManifoldId::sphere2(), 4, rng), "svg"); }) ==
          ErrorKind::Unsupported);
    CHECK(kind_of([&] { export_visualization(inside, "csv"); }) == ErrorKind::Unsupported);
    CHECK(kind_of([&] { export_visualization(inside, "png"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("verify suites")
{
    CHECK(verify_suites().size() == 4);
    const VerifyReport q = run_verify("quadrature");
    CHECK(q.checks.size() == 8);
    CHECK(q.passed());
    const Json j = Json::parse(q.to_json());
    CHECK(j["suite"] == "quadrature");
    CHECK(j["passed"] == true);
    const VerifyReport g = run_verify("gradient");
    CHECK(g.checks.size() == 8);
    CHECK(g.passed());
    CHECK(run_verify("kernel").passed());
    CHECK(run_verify("gamma-proxy").passed());
    CHECK_THROWS_AS(run_verify("everything"), Error);
}
