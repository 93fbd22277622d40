#include "curvedis/export.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace curvedis {

Vec3 so3_ball_point(const Point& x)
{
    require_same(x.manifold, ManifoldId::so3());
    const Vec4 q = so3_to_quaternion(x.mat3());
    // sin(a/2) r / (1 + cos(a/2))
    return Vec3(q[1], q[2], q[3]) / (1.0 + q[0]);
}

GrassGlyph grass_glyph(const Point& x)
{
    require_same(x.manifold, ManifoldId::grass24());
    const Vec3 u = x.vec3(0), v = x.vec3(3);
    GrassGlyph g;
    g.z_plus = u + v;
    g.z_minus = -(u + v);
    g.rgb_plus = (Vec3::Ones() - u) / 2.0;
    g.rgb_minus = (Vec3::Ones() + u) / 2.0;
    return g;
}

std::string torus_svg(const DiscreteCurve& c, double size_px)
{
    require_same(c.manifold, ManifoldId::torus(2));
    if (c.size() < 2) throw Error(ErrorKind::InvalidArgument, "curve needs two points");
    std::vector<std::vector<std::array<double, 2>>> lines(1);
    auto add = [&](double x, double y) { lines.back().push_back({x, y}); };
    add(c[0].c[0], c[0].c[1]);
    for (std::size_t i = 1; i <= c.size(); ++i) {
        const Point& a = c[i - 1];
        const Point& b = c[i % c.size()];
        double p[2] = {a.c[0], a.c[1]};
        const double d[2] = {wrap_diff(b.c[0] - a.c[0]), wrap_diff(b.c[1] - a.c[1])};
        // crossings of the square's edges, in order along the segment
        std::vector<std::pair<double, int>> cuts;
        for (int k = 0; k < 2; ++k) {
            const double e = p[k] + d[k];
            if (e >= 1.0) cuts.push_back({(1.0 - p[k]) / d[k], k});
            else if (e < 0.0) cuts.push_back({-p[k] / d[k], k});
        }
        std::sort(cuts.begin(), cuts.end());
        double t = 0.0;
        for (const auto& [tc, k] : cuts) {
            const double q[2] = {p[0] + (tc - t) * d[0], p[1] + (tc - t) * d[1]};
            add(q[0], q[1]);
            p[0] = q[0];
            p[1] = q[1];
            p[k] = d[k] > 0.0 ? 0.0 : 1.0;
            lines.emplace_back();
            add(p[0], p[1]);
            t = tc;
        }
        add(p[0] + (1.0 - t) * d[0], p[1] + (1.0 - t) * d[1]);
    }
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
       << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& l : lines) {
        if (l.size() < 2) continue;
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < l.size(); ++i) os << (i ? " " : "") << l[i][0] * size_px << ',' << l[i][1] * size_px;
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string visualization_csv(const DiscreteCurve& c)
{
    std::ostringstream os;
    os.precision(17);
    switch (c.manifold.kind()) {
    case ManifoldKind::Torus:
        if (c.manifold.torus_dim() != 3) break;
        os << "x,y,z\n";
        for (const auto& p : c.points) os << p.c[0] << ',' << p.c[1] << ',' << p.c[2] << '\n';
        return os.str();
    case ManifoldKind::Sphere2:
        os << "x,y,z\n";
        for (const auto& p : c.points) os << p.c[0] << ',' << p.c[1] << ',' << p.c[2] << '\n';
        return os.str();
    case ManifoldKind::SO3:
        os << "x,y,z\n";
        for (const auto& p : c.points) {
            const Vec3 b = so3_ball_point(p);
            os << b[0] << ',' << b[1] << ',' << b[2] << '\n';
        }
        return os.str();
    case ManifoldKind::Grass24:
        os << "sign,x,y,z,r,g,b\n";
        for (const auto& p : c.points) {
            const GrassGlyph g = grass_glyph(p);
            os << "+," << g.z_plus[0] << ',' << g.z_plus[1] << ',' << g.z_plus[2] << ',' << g.rgb_plus[0] << ','
               << g.rgb_plus[1] << ',' << g.rgb_plus[2] << '\n';
            os << "-," << g.z_minus[0] << ',' << g.z_minus[1] << ',' << g.z_minus[2] << ',' << g.rgb_minus[0] << ','
               << g.rgb_minus[1] << ',' << g.rgb_minus[2] << '\n';
        }
        return os.str();
    }
    throw Error(ErrorKind::Unsupported, "no CSV visualization for " + c.manifold.tag());
}

std::string export_visualization(const DiscreteCurve& c, const std::string& format)
{
    if (format == "svg") {
        if (c.manifold == ManifoldId::torus(2)) return torus_svg(c);
        throw Error(ErrorKind::Unsupported, "SVG export is only available on torus2");
    }
    if (format == "csv") {
        if (c.manifold == ManifoldId::torus(2)) throw Error(ErrorKind::Unsupported, "torus2 curves export as SVG");
        return visualization_csv(c);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown export format '" + format + "'");
}

} // namespace curvedis
