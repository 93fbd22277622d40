#include "curvedis/quadrature_curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "curvedis/basis.hpp"

namespace curvedis {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

const GaussLegendre& gl64()
{
    static const GaussLegendre g = gauss_legendre(64);
    return g;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b)
{
    if (b <= a) return 0.0;
    const auto& g = gl64();
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t q = 0; q < g.nodes.size(); ++q) s += g.weights[q] * f(m + h * g.nodes[q]);
    return h * s;
}

VecX unit(int n, int i)
{
    VecX e = VecX::Zero(n);
    e[i] = 1.0;
    return e;
}

CurveSegment arc(const VecX& center, const VecX& e1, const VecX& e2, double radius, double th0, double th1)
{
    CurveSegment s;
    s.kind = CurveSegment::Kind::Arc;
    s.center = center;
    s.e1 = e1;
    s.e2 = e2;
    s.radius = radius;
    s.th0 = th0;
    s.th1 = th1;
    return s;
}

std::size_t piece_of(const CurveDensity& rho, double t)
{
    std::size_t lo = 0, hi = rho.pieces.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (rho.pieces[mid].t0 <= t) lo = mid;
        else hi = mid;
    }
    return lo;
}

// great circles (cos a, sin a x_i) of S^d with the |sin|^{d-1} density
std::pair<AnalyticCurve, CurveDensity> great_circle_curve(int d, int r, CurveSpace space)
{
    std::vector<VecX> nodes;
    std::vector<double> a;
    if (d == 2) {
        const int m = 2 * r + 1;
        for (int i = 0; i < m; ++i) {
            const double phi = 2.0 * kPi * i / m;
            nodes.push_back((VecX(2) << std::cos(phi), std::sin(phi)).finished());
            a.push_back(1.0 / m);
        }
    } else if (d == 3) {
        const GaussLegendre gl = gauss_legendre((r + 2) / 2);
        const int m = 2 * r + 1;
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            const double u = gl.nodes[j], s = std::sqrt(std::max(0.0, 1.0 - u * u));
            for (int i = 0; i < m; ++i) {
                const double phi = 2.0 * kPi * i / m;
                nodes.push_back((VecX(3) << u, s * std::cos(phi), s * std::sin(phi)).finished());
                a.push_back(gl.weights[j] / (2.0 * m));
            }
        }
    } else {
        throw Error(ErrorKind::Unsupported, "curve with density needs d in {2, 3}");
    }
    const int n = static_cast<int>(nodes.size());
    const double cd = d == 2 ? 0.5 : 2.0 / kPi;
    AnalyticCurve c;
    c.space = space;
    c.dim = d;
    CurveDensity rho;
    double amax = 0.0;
    for (int i = 0; i < n; ++i) {
        VecX e2 = VecX::Zero(d + 1);
        e2.tail(d) = nodes[i];
        CurveSegment s = arc(VecX::Zero(d + 1), unit(d + 1, 0), e2, 1.0, 0.0, 2.0 * kPi);
        s.t0 = static_cast<double>(i) / n;
        s.t1 = static_cast<double>(i + 1) / n;
        c.segments.push_back(s);
        const double scale = a[i] * cd * kPi * n, t0 = s.t0;
        auto f = [scale, t0, n, d](double t) {
            return scale * std::pow(std::abs(std::sin(2.0 * kPi * n * (t - t0))), d - 1);
        };
        const double tm = (i + 0.5) / n;
        rho.pieces.push_back({s.t0, tm, f});
        rho.pieces.push_back({tm, s.t1, f});
        amax = std::max(amax, a[i]);
    }
    c.segments.back().t1 = 1.0;
    rho.pieces.back().t1 = 1.0;
    rho.lipschitz = amax * cd * kPi * n * (d - 1) * 2.0 * kPi * n;
    return {c, rho};
}

} // namespace

double CurveSegment::length() const
{
    if (kind == Kind::Line) return v.norm();
    return radius * std::abs(th1 - th0);
}

VecX CurveSegment::eval(double s) const
{
    if (kind == Kind::Line) return a + s * v;
    const double th = th0 + s * (th1 - th0);
    return center + radius * (std::cos(th) * e1 + std::sin(th) * e2);
}

ManifoldId AnalyticCurve::manifold() const
{
    switch (space) {
    case CurveSpace::Torus: return ManifoldId::torus(dim);
    case CurveSpace::SO3Lift: return ManifoldId::so3();
    case CurveSpace::Sphere:
        if (dim == 2) return ManifoldId::sphere2();
        break;
    }
    throw Error(ErrorKind::Unsupported, "S^" + std::to_string(dim) + " is not a supported manifold");
}

std::size_t AnalyticCurve::segment_index(double t) const
{
    if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "curve without segments");
    std::size_t lo = 0, hi = segments.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (segments[mid].t0 <= t) lo = mid;
        else hi = mid;
    }
    return lo;
}

VecX AnalyticCurve::ambient(double t) const
{
    const CurveSegment& s = segments[segment_index(t)];
    return s.eval((t - s.t0) / (s.t1 - s.t0));
}

Point AnalyticCurve::to_point(const VecX& a) const
{
    switch (space) {
    case CurveSpace::Torus: {
        std::vector<double> x(a.size());
        for (Eigen::Index j = 0; j < a.size(); ++j) x[j] = wrap01(a[j]);
        return Point::torus(x);
    }
    case CurveSpace::Sphere:
        if (dim != 2) break;
        return Point::sphere2(Vec3(a[0], a[1], a[2]).normalized());
    case CurveSpace::SO3Lift: return covering_map_s3_to_so3(Vec4(a[0], a[1], a[2], a[3]).normalized());
    }
    throw Error(ErrorKind::Unsupported, "S^" + std::to_string(dim) + " is not a supported manifold");
}

Point AnalyticCurve::point(double t) const { return to_point(ambient(t)); }

double AnalyticCurve::lipschitz() const
{
    double m = 0.0;
    for (const auto& s : segments) m = std::max(m, s.speed());
    return m;
}

double AnalyticCurve::length() const
{
    double l = 0.0;
    for (const auto& s : segments) l += s.length();
    return l;
}

void AnalyticCurve::validate(double tol) const
{
    if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "curve without segments");
    if (std::abs(segments.front().t0) > tol || std::abs(segments.back().t1 - 1.0) > tol)
        throw Error(ErrorKind::InvalidArgument, "segments do not cover [0,1]");
    auto gap = [&](const VecX& p, const VecX& q) {
        if (space != CurveSpace::Torus) return (p - q).norm();
        double s = 0.0;
        for (Eigen::Index j = 0; j < p.size(); ++j) s += std::pow(wrap_diff(p[j] - q[j]), 2);
        return std::sqrt(s);
    };
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        const auto& n = segments[(i + 1) % segments.size()];
        if (!(s.t1 > s.t0)) throw Error(ErrorKind::InvalidArgument, "empty parameter interval");
        if (i + 1 < segments.size() && std::abs(s.t1 - n.t0) > tol)
            throw Error(ErrorKind::InvalidArgument, "parameter intervals do not partition [0,1]");
        if (gap(s.eval(1.0), n.eval(0.0)) > 1e3 * tol) throw Error(ErrorKind::GraphInvalid, "consecutive segments do not meet");
    }
}

double CurveDensity::operator()(double t) const { return pieces[piece_of(*this, t)].rho(t); }

double CurveDensity::integral() const
{
    double s = 0.0;
    for (const auto& p : pieces) s += integrate_gl(p.rho, p.t0, p.t1);
    return s;
}

CurveDensity constant_density(const AnalyticCurve&)
{
    CurveDensity d;
    d.pieces.push_back({0.0, 1.0, [](double) { return 1.0; }});
    return d;
}

std::vector<std::pair<int, bool>> euler_circuit(int vertices, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::vector<int>> adj(vertices);
    std::vector<int> deg(vertices, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [u, v] = edges[e];
        if (u < 0 || v < 0 || u >= vertices || v >= vertices) throw Error(ErrorKind::GraphInvalid, "edge endpoint out of range");
        adj[u].push_back(static_cast<int>(e));
        if (v != u) adj[v].push_back(static_cast<int>(e));
        deg[u] += 1;
        deg[v] += 1;
    }
    for (int v = 0; v < vertices; ++v)
        if (deg[v] % 2 != 0) throw Error(ErrorKind::GraphInvalid, "vertex of odd degree");
    if (edges.empty()) return {};
    if (deg[0] == 0) throw Error(ErrorKind::GraphInvalid, "start vertex is isolated");

    std::vector<char> used(edges.size(), 0);
    std::vector<std::size_t> ptr(vertices, 0);
    // (vertex, edge used to arrive)
    std::vector<std::pair<int, int>> stack{{0, -1}}, out;
    while (!stack.empty()) {
        const int v = stack.back().first;
        while (ptr[v] < adj[v].size() && used[adj[v][ptr[v]]]) ++ptr[v];
        if (ptr[v] == adj[v].size()) {
            out.push_back(stack.back());
            stack.pop_back();
            continue;
        }
        const int e = adj[v][ptr[v]];
        used[e] = 1;
        const int w = edges[e].first == v ? edges[e].second : edges[e].first;
        stack.push_back({w, e});
    }
    if (out.size() != edges.size() + 1) throw Error(ErrorKind::GraphInvalid, "edge graph is disconnected");
    std::reverse(out.begin(), out.end());
    std::vector<std::pair<int, bool>> circuit;
    for (std::size_t k = 1; k < out.size(); ++k) {
        const int e = out[k].second, from = out[k - 1].first;
        circuit.push_back({e, edges[e].first != from});
    }
    return circuit;
}

AnalyticCurve torus_quadrature_curve(int d, int r)
{
    if (d < 1 || d > kMaxCoords) throw Error(ErrorKind::InvalidArgument, "torus dimension out of range");
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    const int n = r + 1;
    int nv = 1;
    for (int j = 0; j < d; ++j) nv *= n;
    auto coord = [&](int v, int j) {
        for (int i = 0; i < j; ++i) v /= n;
        return v % n;
    };
    std::vector<std::pair<int, int>> edges;
    std::vector<int> axis;
    int stride = 1;
    for (int j = 0; j < d; ++j, stride *= n)
        for (int v = 0; v < nv; ++v) {
            const int w = coord(v, j) == n - 1 ? v - (n - 1) * stride : v + stride;
            edges.push_back({v, w});
            axis.push_back(j);
        }
    const auto circuit = euler_circuit(nv, edges);
    AnalyticCurve c;
    c.space = CurveSpace::Torus;
    c.dim = d;
    const double dt = 1.0 / static_cast<double>(edges.size());
    for (std::size_t k = 0; k < circuit.size(); ++k) {
        const auto [e, back] = circuit[k];
        const int start = back ? edges[e].second : edges[e].first;
        CurveSegment s;
        s.kind = CurveSegment::Kind::Line;
        s.a = VecX(d);
        for (int j = 0; j < d; ++j) s.a[j] = static_cast<double>(coord(start, j)) / n;
        s.v = (back ? -1.0 : 1.0) / n * unit(d, axis[e]);
        s.t0 = k * dt;
        s.t1 = k + 1 == circuit.size() ? 1.0 : (k + 1) * dt;
        c.segments.push_back(s);
    }
    return c;
}

AnalyticCurve sphere2_quadrature_curve(int r)
{
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    const GaussLegendre gl = gauss_legendre((r + 2) / 2);
    const int m = static_cast<int>(gl.nodes.size());
    AnalyticCurve c;
    c.space = CurveSpace::Sphere;
    c.dim = 2;
    // family A: x1 = u_j; family B: x3 = u_j
    for (int fam = 0; fam < 2; ++fam)
        for (int j = 0; j < m; ++j) {
            const double u = gl.nodes[j];
            CircleInfo ci;
            ci.radius = std::sqrt(1.0 - u * u);
            ci.center = u * unit(3, fam == 0 ? 0 : 2);
            ci.e1 = unit(3, 1);
            ci.e2 = unit(3, fam == 0 ? 2 : 0);
            ci.mass = 0.25 * gl.weights[j];
            c.circles.push_back(ci);
        }
    // vertices: A_j meets B_l at (u_j, +-y, u_l)
    std::vector<Vec3> verts;
    std::vector<std::vector<std::pair<double, int>>> on(2 * m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
            const double y2 = 1.0 - gl.nodes[j] * gl.nodes[j] - gl.nodes[l] * gl.nodes[l];
            if (y2 < -1e-14) continue;
            const double y = std::sqrt(std::max(0.0, y2));
            for (int sg : {1, -1}) {
                if (sg < 0 && y == 0.0) break;
                const Vec3 p(gl.nodes[j], sg * y, gl.nodes[l]);
                const int id = static_cast<int>(verts.size());
                verts.push_back(p);
                auto ang = [](double a, double b) {
                    const double t = std::atan2(b, a);
                    return t < 0.0 ? t + 2.0 * kPi : t;
                };
                on[j].push_back({ang(p[1], p[2]), id});
                on[m + l].push_back({ang(p[1], p[0]), id});
            }
        }
    struct Arc {
        int circle;
        double a0, a1;
    };
    std::vector<Arc> arcs;
    std::vector<std::pair<int, int>> edges;
    for (int ci = 0; ci < 2 * m; ++ci) {
        auto& vs = on[ci];
        if (vs.empty()) throw Error(ErrorKind::GraphInvalid, "latitude circle without intersections");
        std::sort(vs.begin(), vs.end());
        for (std::size_t k = 0; k < vs.size(); ++k) {
            const auto& nx = vs[(k + 1) % vs.size()];
            const double a1 = k + 1 < vs.size() ? nx.first : nx.first + 2.0 * kPi;
            arcs.push_back({ci, vs[k].first, a1});
            edges.push_back({vs[k].second, nx.second});
        }
    }
    // start the circuit at a vertex of the first circle
    const int v0 = on[0].front().second;
    for (auto& e : edges) {
        if (e.first == v0) e.first = 0;
        else if (e.first == 0) e.first = v0;
        if (e.second == v0) e.second = 0;
        else if (e.second == 0) e.second = v0;
    }
    const auto circuit = euler_circuit(static_cast<int>(verts.size()), edges);
    double t = 0.0;
    for (std::size_t k = 0; k < circuit.size(); ++k) {
        const auto [e, back] = circuit[k];
        const Arc& a = arcs[e];
        const CircleInfo& ci = c.circles[a.circle];
        CurveSegment s = arc(ci.center, ci.e1, ci.e2, ci.radius, back ? a.a1 : a.a0, back ? a.a0 : a.a1);
        s.circle = a.circle;
        s.t0 = t;
        t += ci.mass * (a.a1 - a.a0) / (2.0 * kPi);
        s.t1 = k + 1 == circuit.size() ? 1.0 : t;
        c.segments.push_back(s);
    }
    return c;
}

std::pair<AnalyticCurve, CurveDensity> sphere_d_curve_with_density(int d, int r)
{
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    return great_circle_curve(d, r, CurveSpace::Sphere);
}

std::pair<AnalyticCurve, CurveDensity> so3_quadrature_curve(int r)
{
    if (r < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    return great_circle_curve(3, 2 * r, CurveSpace::SO3Lift);
}

void integrate_curve(const AnalyticCurve& c, const CurveDensity* rho, int nodes,
                     const std::function<void(const VecX&, double)>& visit)
{
    const GaussLegendre gl = gauss_legendre(nodes);
    auto run = [&](double t0, double t1, const std::function<double(double)>* f) {
        const double m = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double t = m + h * gl.nodes[q];
            const double w = h * gl.weights[q] * (f ? (*f)(t) : 1.0);
            const CurveSegment& s = c.segments[c.segment_index(t)];
            visit(s.eval((t - s.t0) / (s.t1 - s.t0)), w);
        }
    };
    if (rho) {
        // density pieces are refined against the segments so every node range is smooth
        for (const auto& p : rho->pieces) {
            double a = p.t0;
            std::size_t i = c.segment_index(a);
            while (a < p.t1) {
                const double b = std::min(p.t1, i < c.segments.size() ? c.segments[i].t1 : p.t1);
                if (b > a) run(a, b, &p.rho);
                a = b;
                if (++i >= c.segments.size()) break;
            }
        }
    } else {
        for (const auto& s : c.segments) run(s.t0, s.t1, nullptr);
    }
}

SpectralMeasure analytic_line_coefficients(const AnalyticCurve& c, int r, const CurveDensity* rho)
{
    const ManifoldId m = c.manifold();
    SpectralBasis basis(m, r);
    SpectralMeasure mu{m, r, std::vector<cplx>(basis.size(), 0.0)};
    std::vector<cplx> vals(basis.size());
    BasisWorkspace ws;
    const bool lines = c.space == CurveSpace::Torus &&
                       std::all_of(c.segments.begin(), c.segments.end(),
                                   [](const CurveSegment& s) { return s.kind == CurveSegment::Kind::Line; });
    if (!rho && lines) {
        const auto idx = enumerate_frequencies(m, r);
        for (const auto& s : c.segments) {
            basis.values(c.to_point(s.a), vals.data(), ws);
            const double share = s.t1 - s.t0;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                double th = 0.0;
                for (int j = 0; j < c.dim; ++j) th += idx[k].parts[j] * s.v[j];
                th *= 2.0 * kPi;
                mu.coeffs[k] += share * std::conj(vals[k]) * (sinc(0.5 * th) * std::polar(1.0, -0.5 * th));
            }
        }
        return mu;
    }
    const int deg = c.space == CurveSpace::SO3Lift ? 2 * r : r;
    integrate_curve(c, rho, 4 * deg + 24, [&](const VecX& a, double w) {
        basis.values(c.to_point(a), vals.data(), ws);
        for (std::size_t k = 0; k < vals.size(); ++k) mu.coeffs[k] += w * std::conj(vals[k]);
    });
    return mu;
}

SpectralMeasure circle_rule_coefficients(const AnalyticCurve& c, int r, int nodes)
{
    if (nodes < 1) throw Error(ErrorKind::InvalidArgument, "circle rule needs a node");
    if (c.circles.empty()) throw Error(ErrorKind::InvalidArgument, "curve has no full circles");
    const ManifoldId m = c.manifold();
    SpectralBasis basis(m, r);
    SpectralMeasure mu{m, r, std::vector<cplx>(basis.size(), 0.0)};
    std::vector<cplx> vals(basis.size());
    BasisWorkspace ws;
    for (const auto& ci : c.circles)
        for (int q = 0; q < nodes; ++q) {
            const double th = 2.0 * kPi * q / nodes;
            basis.values(c.to_point(ci.center + ci.radius * (std::cos(th) * ci.e1 + std::sin(th) * ci.e2)), vals.data(), ws);
            for (std::size_t k = 0; k < vals.size(); ++k) mu.coeffs[k] += ci.mass / nodes * std::conj(vals[k]);
        }
    return mu;
}

Reparametrized::Reparametrized(AnalyticCurve c, CurveDensity rho) : curve_(std::move(c)), rho_(std::move(rho))
{
    if (rho_.pieces.empty()) throw Error(ErrorKind::InvalidArgument, "density without pieces");
    if (std::abs(rho_.pieces.front().t0) > 1e-12 || std::abs(rho_.pieces.back().t1 - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "density pieces do not cover [0,1]");
    double acc = 0.0;
    for (std::size_t p = 0; p < rho_.pieces.size(); ++p) {
        const auto& pc = rho_.pieces[p];
        if (!(pc.t1 > pc.t0)) throw Error(ErrorKind::InvalidArgument, "empty density piece");
        if (p > 0 && std::abs(pc.t0 - rho_.pieces[p - 1].t1) > 1e-12)
            throw Error(ErrorKind::InvalidArgument, "density pieces do not partition [0,1]");
        constexpr int kProbe = 256;
        bool prev_zero = false;
        for (int q = 0; q <= kProbe; ++q) {
            const double v = pc.rho(pc.t0 + (pc.t1 - pc.t0) * q / kProbe);
            if (v < 0.0 || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "density must be finite and nonnegative");
            const bool zero = v == 0.0;
            if (zero && prev_zero) throw Error(ErrorKind::NotInvertible, "density vanishes on an interval");
            prev_zero = zero;
        }
        const double mass = integrate_gl(pc.rho, pc.t0, pc.t1);
        if (!(mass > 0.0)) throw Error(ErrorKind::NotInvertible, "density piece has zero mass");
        cum_.push_back(acc);
        acc += mass;
    }
    beta_ = acc;
    cum_.push_back(acc);
    for (double v : cum_) s_breaks_.push_back(v / beta_);
    s_breaks_.back() = 1.0;
}

double Reparametrized::piece_mass(std::size_t p, double t) const
{
    return integrate_gl(rho_.pieces[p].rho, rho_.pieces[p].t0, t);
}

double Reparametrized::g(double t) const
{
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const std::size_t p = piece_of(rho_, t);
    return (cum_[p] + piece_mass(p, t)) / beta_;
}

double Reparametrized::g_inverse(double s) const
{
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double target = s * beta_;
    const std::size_t p = std::min<std::size_t>(
        std::upper_bound(cum_.begin(), cum_.end(), target) - cum_.begin() - 1, rho_.pieces.size() - 1);
    const auto& pc = rho_.pieces[p];
    double lo = pc.t0, hi = pc.t1;
    const double mass = cum_[p + 1] - cum_[p];
    double t = lo + (hi - lo) * std::clamp((target - cum_[p]) / mass, 0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        const double f = cum_[p] + piece_mass(p, t) - target;
        if (f > 0.0) hi = t;
        else lo = t;
        if (std::abs(f) <= 1e-16 * beta_ || hi - lo <= 1e-15) break;
        const double d = pc.rho(t);
        double tn = d > 0.0 ? t - f / d : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::abs(tn - t) < 1e-16) break;
        t = tn;
    }
    return t;
}

SpectralMeasure Reparametrized::lebesgue_coefficients(int r) const
{
    const ManifoldId m = curve_.manifold();
    SpectralBasis basis(m, r);
    SpectralMeasure mu{m, r, std::vector<cplx>(basis.size(), 0.0)};
    std::vector<cplx> vals(basis.size());
    BasisWorkspace ws;
    // tanh-sinh in s on each piece; g^{-1} has square-root type endpoints where rho vanishes
    constexpr double kStep = 1.0 / 32.0, kRange = 3.5;
    for (std::size_t p = 0; p + 1 < s_breaks_.size(); ++p) {
        const double a = s_breaks_[p], b = s_breaks_[p + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (double u = -kRange; u <= kRange + 1e-12; u += kStep) {
            const double x = 0.5 * kPi * std::sinh(u);
            const double ch = std::cosh(x);
            const double w = kStep * half * 0.5 * kPi * std::cosh(u) / (ch * ch);
            basis.values(point(mid + half * std::tanh(x)), vals.data(), ws);
            for (std::size_t k = 0; k < vals.size(); ++k) mu.coeffs[k] += w * std::conj(vals[k]);
        }
    }
    return mu;
}

Reparametrized reparametrize_constant_speed(const AnalyticCurve& c, const CurveDensity& rho)
{
    return Reparametrized(c, rho);
}

DiscreteCurve discretize(const AnalyticCurve& c, int n)
{
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "discretization needs N >= 2");
    DiscreteCurve out{c.manifold(), {}};
    for (int i = 0; i < n; ++i) out.points.push_back(c.point(static_cast<double>(i) / n));
    return out;
}

DiscreteCurve discretize(const Reparametrized& c, int n)
{
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "discretization needs N >= 2");
    DiscreteCurve out{c.base().manifold(), {}};
    for (int i = 0; i < n; ++i) out.points.push_back(c.point(static_cast<double>(i) / n));
    return out;
}

} // namespace curvedis
