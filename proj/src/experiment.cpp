#include "curvedis/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace curvedis {

namespace {

constexpr double kPi = std::numbers::pi;

// advance a stage curve to n points: midpoint doubling, then arclength resampling for the remainder
DiscreteCurve grow(DiscreteCurve x, int n, bool refine)
{
    if (refine)
        while (2 * x.size() <= static_cast<std::size_t>(n)) x = midpoint_refine(x);
    if (x.size() != static_cast<std::size_t>(n)) x = resample(x, n);
    return x;
}

StageResult solve_stage(const SpectralMeasure& mu, const ContinuationSchedule& sched, const Stage& st,
                        const DiscreteCurve& x0, const ContinuationOptions& opt, const CgConfig& cg)
{
    StageResult res;
    res.stage = st;
    res.curve = x0;
    try {
        ObjectiveConfig cfg = make_objective_config(mu.resized(st.r), st.L, st.lambda);
        cfg.exec = opt.exec;
        const Objective f(cfg);
        CgResult out = cg_minimize(f, x0, cg);
        res.curve = std::move(out.curve);
        res.trace = std::move(out.trace);
    } catch (const Error& e) {
        res.error = e.what();
    }
    res.disc_sq = empirical_disc_sq(mu, res.curve, sched.eval_degree > 0 ? sched.eval_degree : st.r, opt.exec);
    res.length = curve_length(res.curve);
    res.max_speed = max_speed(res.curve);
    return res;
}

} // namespace

void ContinuationSchedule::validate() const
{
    if (stages.empty()) throw Error(ErrorKind::InvalidArgument, "schedule without stages");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const Stage& s = stages[i];
        if (!(s.L > 0.0) || s.N < 2 || s.r < 0 || !(s.lambda > 0.0))
            throw Error(ErrorKind::InvalidArgument, "stage parameters must be positive");
        if (i > 0 && !(s.L > stages[i - 1].L)) throw Error(ErrorKind::InvalidArgument, "L must increase along the ladder");
        if (i > 0 && s.N < stages[i - 1].N) throw Error(ErrorKind::InvalidArgument, "N must not decrease along the ladder");
    }
    if (polish.enabled && (!(polish.lambda_factor > 0.0) || polish.n_factor < 1 || !(polish.l_factor > 0.0)))
        throw Error(ErrorKind::InvalidArgument, "invalid polish rule");
    if (eval_degree < 0) throw Error(ErrorKind::InvalidArgument, "negative evaluation degree");
}

ContinuationSchedule build_schedule(const ScheduleLaw& law)
{
    if (law.stages < 1) throw Error(ErrorKind::InvalidArgument, "schedule needs at least one stage");
    if (!(law.L0 > 0.0) || !(law.ladder > 1.0)) throw Error(ErrorKind::InvalidArgument, "ladder needs L0 > 0 and c > 1");
    ContinuationSchedule s;
    for (int i = 0; i < law.stages; ++i) {
        Stage st;
        st.L = law.L0 * std::pow(law.ladder, i);
        st.lambda = law.lambda_c * std::pow(st.L, law.lambda_exp);
        st.N = static_cast<int>(std::lround(law.n_c * std::pow(st.L, law.n_exp)));
        // the paper's floors hit exact powers of two
        st.r = static_cast<int>(std::floor(law.r_c * std::pow(st.L, law.r_exp) + 1e-9)) + law.r_offset;
        s.stages.push_back(st);
    }
    s.polish = law.polish;
    s.validate();
    return s;
}

double lambda_exponent(int d, int d_mu, double s)
{
    return (-2.0 * s - 3.0 * d_mu + d + 2.0) / (d_mu - 1.0);
}

ScheduleLaw experiment_law(const std::string& name)
{
    ScheduleLaw w;
    if (name == "torus2") {
        w.L0 = 0.97 * std::pow(2.0, 2.5);
        w.ladder = std::sqrt(2.0);
        w.stages = 12;
        w.lambda_c = 100.0;
        w.lambda_exp = -5.0;
        w.n_c = 96.0 / (w.L0 * w.L0);
        w.n_exp = 2.0;
        w.r_c = 8.0 / 0.97;
        w.r_exp = 1.0;
        w.polish = {true, 100.0, 2, 1.0 / 0.97, -1};
    } else if (name == "torus3") {
        w.L0 = std::pow(2.0, 2.5);
        w.ladder = std::sqrt(2.0);
        w.stages = 9;
        w.lambda_c = 10.0;
        w.lambda_exp = -5.0;
        w.n_c = 100.0 / (w.L0 * w.L0);
        w.n_exp = 2.0;
        w.r_c = 1.0;
        w.r_exp = 1.0;
        w.polish = {true, 100.0, 2, std::sqrt(2.0), 1};
    } else if (name == "sphere2") {
        w.L0 = 9.7;
        w.ladder = std::sqrt(2.0);
        w.stages = 13;
        w.lambda_c = 100.0;
        w.lambda_exp = -5.0;
        w.n_c = 100.0 / (w.L0 * w.L0);
        w.n_exp = 2.0;
        w.r_c = 1.0;
        w.r_exp = 1.0;
        w.polish = {true, 100.0, 2, 1.0, 1};
    } else if (name == "so3") {
        w.L0 = 0.93 * 16.0;
        w.ladder = std::pow(2.0, 2.0 / 3.0);
        w.stages = 9;
        w.lambda_c = 10.0;
        w.lambda_exp = -4.0;
        w.n_c = 64.0 / std::pow(w.L0, 1.5);
        w.n_exp = 1.5;
        w.r_c = 2.0 / std::sqrt(0.93);
        w.r_exp = 0.5;
    } else if (name == "grass24") {
        w.L0 = 0.91 * 16.0;
        w.ladder = std::pow(2.0, 0.75);
        w.stages = 9;
        w.lambda_c = 100.0;
        w.lambda_exp = -11.0 / 3.0;
        w.n_c = 128.0 / std::pow(w.L0, 4.0 / 3.0);
        w.n_exp = 4.0 / 3.0;
        w.r_c = std::pow(0.91, -1.0 / 3.0);
        w.r_exp = 1.0 / 3.0;
        w.r_offset = 1;
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown experiment '" + name + "'");
    }
    return w;
}

ScheduleLaw default_law(const ManifoldId& m, int d_mu, double s, double L0, int stages)
{
    const int d = m.dim();
    if (d_mu < 2 || d_mu > d) throw Error(ErrorKind::InvalidArgument, "support dimension must lie in [2, dim]");
    if (!(s > 0.5 * d)) throw Error(ErrorKind::InvalidArgument, "smoothness must exceed d/2");
    if (!(L0 > 0.0) || stages < 1) throw Error(ErrorKind::InvalidArgument, "need L0 > 0 and at least one stage");

    const char* preset = nullptr;
    if (m == ManifoldId::torus(2) && d_mu == 2 && s == 1.5) preset = "torus2";
    else if (m == ManifoldId::torus(3) && d_mu == 2 && s == 2.0) preset = "torus3";
    else if (m == ManifoldId::sphere2() && d_mu == 2 && s == 1.5) preset = "sphere2";
    else if (m == ManifoldId::so3() && d_mu == 3 && s == 2.0) preset = "so3";
    else if (m == ManifoldId::grass24() && d_mu == 4 && s == 2.5) preset = "grass24";

    ScheduleLaw w;
    w.ladder = std::pow(2.0, (d_mu - 1.0) / d_mu);
    w.lambda_exp = lambda_exponent(d, d_mu, s);
    w.n_exp = d_mu / (d_mu - 1.0);
    w.r_exp = 1.0 / (d_mu - 1.0);
    if (preset) {
        const ScheduleLaw p = experiment_law(preset);
        w.lambda_c = p.lambda_c;
        w.n_c = p.n_c;
        w.r_c = p.r_c;
        w.r_offset = p.r_offset;
        w.polish = p.polish;
    } else {
        w.lambda_c = 100.0;
        w.n_c = 6.0;
        w.r_c = d_mu == 2 ? 2.0 : 1.0;
    }
    w.L0 = L0;
    w.stages = stages;
    return w;
}

ContinuationSchedule default_schedule(const ManifoldId& m, int d_mu, double s, double L0, int stages)
{
    return build_schedule(default_law(m, d_mu, s, L0, stages));
}

DiscreteCurve experiment_initial_curve(const std::string& name, int n)
{
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "initial curve needs N >= 2");
    DiscreteCurve c;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * kPi * k / n;
        if (name == "torus2") {
            const double x[2] = {wrap01(0.2 * std::cos(a)), wrap01(0.2 * std::sin(a))};
            c.points.push_back(Point::torus(x));
        } else if (name == "torus3") {
            const double x[3] = {wrap01(0.3 * std::cos(a)), wrap01(0.3 * std::sin(a)), wrap01(0.3 * std::sin(2.0 * a))};
            c.points.push_back(Point::torus(x));
        } else if (name == "sphere2") {
            // a latitude circle, wobbled so that no rotation about e_3 maps it to itself
            const double z = 0.25 + 0.15 * std::sin(2.0 * a) + 0.1 * std::cos(3.0 * a);
            c.points.push_back(Point::sphere2(Vec3(std::cos(a), std::sin(a), z).normalized()));
        } else if (name == "so3") {
            const Vec4 ctr = 0.5 / std::sqrt(2.0) * Vec4(0.0, 1.0, -1.0, 0.0);
            const Vec4 e1(1.0, 0.0, 0.0, 0.0), e2 = Vec4(0.0, 1.0, 1.0, 1.0) / std::sqrt(3.0);
            const Vec4 q = ctr + std::sqrt(0.75) * (std::cos(a) * e1 + std::sin(a) * e2);
            c.points.push_back(covering_map_s3_to_so3(q.normalized()));
        } else if (name == "grass24") {
            const Vec3 u(std::cos(a), std::sin(a), 0.0);
            const Vec3 v = Vec3(0.5 * std::cos(2.0 * a), 0.5 * std::sin(2.0 * a), 0.7 + 0.2 * std::sin(a)).normalized();
            c.points.push_back(grass_from_pair(u, v));
        } else {
            throw Error(ErrorKind::InvalidArgument, "unknown experiment '" + name + "'");
        }
    }
    c.manifold = c.points.front().manifold;
    return c;
}

DiscreteCurve midpoint_refine(const DiscreteCurve& c)
{
    if (c.size() < 2) throw Error(ErrorKind::InvalidArgument, "refinement needs N >= 2");
    DiscreteCurve out{c.manifold, {}};
    out.points.reserve(2 * c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.points.push_back(c[i]);
        out.points.push_back(geodesic_midpoint(c[i], c[(i + 1) % c.size()]));
    }
    return out;
}

DiscreteCurve resample(const DiscreteCurve& c, int n)
{
    if (c.size() < 2 || n < 2) throw Error(ErrorKind::InvalidArgument, "resampling needs at least two points");
    const std::size_t m = c.size();
    std::vector<double> cum(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) cum[i + 1] = cum[i] + distance(c[i], c[(i + 1) % m]);
    const double total = cum[m];
    if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "curve has zero length");
    DiscreteCurve out{c.manifold, {}};
    std::size_t seg = 0;
    for (int j = 0; j < n; ++j) {
        const double s = total * j / n;
        while (seg + 1 < m && cum[seg + 1] <= s) ++seg;
        const double len = cum[seg + 1] - cum[seg];
        const double f = len > 0.0 ? (s - cum[seg]) / len : 0.0;
        out.points.push_back(f == 0.0 ? c[seg] : exp_map(c[seg], f * log_map(c[seg], c[(seg + 1) % m])));
    }
    return out;
}

double empirical_disc_sq(const SpectralMeasure& mu, const DiscreteCurve& c, int r, Exec exec)
{
    require_same(mu.manifold, c.manifold);
    const SpectralBasis basis(c.manifold, r);
    std::vector<cplx> nu(basis.size());
    empirical_sum(basis, c.points, nu.data(), exec);
    const SpectralMeasure m = mu.resized(r);
    const KernelWeights kw = kernel_weights(c.manifold, r);
    double s = 0.0;
    for (std::size_t k = 0; k < nu.size(); ++k) s += kw.alpha[k] * std::norm(m.coeffs[k] - nu[k]);
    return s;
}

std::vector<StageResult> run_continuation(const SpectralMeasure& mu, const ContinuationSchedule& sched,
                                          const DiscreteCurve& x0, const ContinuationOptions& opt)
{
    sched.validate();
    require_same(mu.manifold, x0.manifold);
    std::vector<StageResult> out;
    DiscreteCurve x = x0.size() == static_cast<std::size_t>(sched.stages[0].N) ? x0 : resample(x0, sched.stages[0].N);
    for (std::size_t i = 0; i < sched.stages.size(); ++i) {
        const Stage& st = sched.stages[i];
        if (i > 0) x = grow(x, st.N, sched.midpoint_refine);
        StageResult res = solve_stage(mu, sched, st, x, opt, opt.cg);
        res.index = static_cast<int>(i);
        x = res.curve;
        if (opt.on_stage) opt.on_stage(res);
        out.push_back(std::move(res));
    }
    if (sched.polish.enabled) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            Stage st = out[i].stage;
            st.N *= sched.polish.n_factor;
            st.L *= sched.polish.l_factor;
            st.lambda *= sched.polish.lambda_factor;
            CgConfig cg = opt.cg;
            cg.restart_extra = sched.polish.restarts < 0 ? static_cast<int>(i) : sched.polish.restarts;
            StageResult res = solve_stage(mu, sched, st, grow(out[i].curve, st.N, sched.midpoint_refine), opt, cg);
            res.index = static_cast<int>(i);
            res.polish = true;
            if (opt.on_stage) opt.on_stage(res);
            out.push_back(std::move(res));
        }
    }
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::InvalidArgument, "slope fit needs two or more pairs");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log fit needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "slope fit needs distinct abscissae");
    return sxy / sxx;
}

std::string DecayTable::to_csv() const
{
    std::ostringstream os;
    os.precision(17);
    os << "L,disc_sq,length,max_speed\n";
    for (const auto& r : rows) os << r.L << ',' << r.disc_sq << ',' << r.length << ',' << r.max_speed << '\n';
    return os.str();
}

DecayTable decay_table(const std::vector<StageResult>& results, double s, int d_mu)
{
    const bool polished = std::any_of(results.begin(), results.end(), [](const StageResult& r) { return r.polish; });
    DecayTable t;
    t.reference = -2.0 * s / (d_mu - 1.0);
    std::vector<double> L, len, dsq;
    for (const auto& r : results) {
        if (r.polish != polished || !r.error.empty()) continue;
        t.rows.push_back({r.stage.L, r.disc_sq, r.length, r.max_speed});
        L.push_back(r.stage.L);
        len.push_back(r.length);
        dsq.push_back(r.disc_sq);
    }
    if (t.rows.size() >= 2) {
        t.slope_vs_L = loglog_slope(L, dsq);
        t.slope_vs_length = loglog_slope(len, dsq);
    }
    return t;
}

DecayTable decay_experiment(const SpectralMeasure& mu, const ContinuationSchedule& sched, const DiscreteCurve& x0,
                            const ContinuationOptions& opt, double s, int d_mu, std::vector<StageResult>* results)
{
    if (sched.stages.size() < 3) throw Error(ErrorKind::InvalidArgument, "decay experiment needs at least three stages");
    auto res = run_continuation(mu, sched, x0, opt);
    DecayTable t = decay_table(res, s, d_mu);
    if (results) *results = std::move(res);
    return t;
}

} // namespace curvedis
