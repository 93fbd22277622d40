#include "curvedis/setup.hpp"

#include <algorithm>
#include <filesystem>

namespace curvedis {

namespace {

namespace fs = std::filesystem;

std::string lower_ext(const std::string& path)
{
    std::string e = fs::path(path).extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e;
}

std::string resolve(const std::string& path, const std::string& base)
{
    if (path.empty() || fs::path(path).is_absolute() || base.empty()) return path;
    return (fs::path(base) / path).string();
}

ScheduleLaw law_from_config(const Config& cfg, const ManifoldId& m, const Smoothness& sm)
{
    const std::string preset = cfg.get("schedule.preset", std::string("default"));
    ScheduleLaw w;
    if (preset == "default") {
        w = default_law(m, sm.support_dim, sm.s, cfg.get("schedule.L0", 4.0), cfg.get("schedule.stages", 4));
    } else {
        w = experiment_law(preset);
    }
    w.L0 = cfg.get("schedule.L0", w.L0);
    w.ladder = cfg.get("schedule.ladder", w.ladder);
    w.stages = cfg.get("schedule.stages", w.stages);
    w.lambda_c = cfg.get("schedule.lambda_c", w.lambda_c);
    w.lambda_exp = cfg.get("schedule.lambda_exp", w.lambda_exp);
    w.n_c = cfg.get("schedule.n_c", w.n_c);
    w.n_exp = cfg.get("schedule.n_exp", w.n_exp);
    w.r_c = cfg.get("schedule.r_c", w.r_c);
    w.r_exp = cfg.get("schedule.r_exp", w.r_exp);
    w.r_offset = cfg.get("schedule.r_offset", w.r_offset);
    w.polish.enabled = cfg.get("polish.enabled", w.polish.enabled);
    w.polish.lambda_factor = cfg.get("polish.lambda_factor", w.polish.lambda_factor);
    w.polish.n_factor = cfg.get("polish.n_factor", w.polish.n_factor);
    w.polish.l_factor = cfg.get("polish.l_factor", w.polish.l_factor);
    w.polish.restarts = cfg.get("polish.restarts", w.polish.restarts);
    return w;
}

} // namespace

Smoothness default_smoothness(const ManifoldId& m)
{
    switch (m.kind()) {
    case ManifoldKind::Torus: return m.torus_dim() == 3 ? Smoothness{2.0, 2} : Smoothness{0.5 * (m.torus_dim() + 1), m.torus_dim()};
    case ManifoldKind::Sphere2: return {1.5, 2};
    case ManifoldKind::SO3: return {2.0, 3};
    case ManifoldKind::Grass24: return {2.5, 4};
    }
    return {};
}

SpectralMeasure build_measure(const std::string& spec, const ManifoldId& m, int r, const MeasureOptions& opt)
{
    if (spec == "uniform") return uniform_measure(m, r);
    if (spec == "doughnut" || spec == "doughnut_haar") {
        require_same(m, ManifoldId::so3());
        return spec == "doughnut" ? so3_doughnut(r) : so3_doughnut_haar(r);
    }
    const std::string ext = lower_ext(spec);
    if (ext == ".json") {
        const SpectralMeasure mu = load_measure(spec);
        require_same(mu.manifold, m);
        return mu.resized(std::min(r, mu.degree));
    }
    if (ext == ".pgm") {
        require_same(m, ManifoldId::torus(2));
        const Image img = read_pgm(spec);
        // stages above the image's Nyquist limit see zero coefficients
        const int cap = (std::min(img.height, img.width) - 1) / 2;
        return from_torus_image(img, std::min(r, cap), opt.invert);
    }
    if (m == ManifoldId::sphere2()) return from_sphere_grid(read_sphere_grid(spec), r);
    if (m.kind() == ManifoldKind::Torus) {
        const auto pts = read_point_list(spec);
        if (pts.empty() || static_cast<int>(pts.front().size()) != m.torus_dim())
            throw Error(ErrorKind::Io, spec + ": point dimension does not match " + m.tag());
        return gaussian_mixture_torus(pts, opt.sharpness, std::max(opt.grid, 2 * r + 2), r);
    }
    throw Error(ErrorKind::Unsupported, "no file measure loader for " + m.tag());
}

ExperimentSetup load_experiment(const Config& cfg, const std::string& base_dir)
{
    ExperimentSetup e;
    e.name = cfg.get("experiment.name", std::string("experiment"));
    e.manifold = ManifoldId::from_tag(cfg.get("experiment.manifold", e.name));
    e.smooth = default_smoothness(e.manifold);
    e.smooth.s = cfg.get("experiment.s", e.smooth.s);
    e.smooth.support_dim = cfg.get("experiment.support_dim", e.smooth.support_dim);

    e.schedule = build_schedule(law_from_config(cfg, e.manifold, e.smooth));
    e.schedule.midpoint_refine = cfg.get("schedule.midpoint_refine", true);
    e.schedule.eval_degree = cfg.get("schedule.eval_degree", 0);
    e.schedule.validate();

    int r = e.schedule.eval_degree;
    for (const auto& st : e.schedule.stages) r = std::max(r, st.r);
    r = std::min(r, cfg.get("measure.max_degree", r));
    MeasureOptions mo;
    mo.invert = cfg.get("measure.invert", false);
    mo.sharpness = cfg.get("measure.sharpness", mo.sharpness);
    mo.grid = cfg.get("measure.grid", mo.grid);
    const std::string kind = cfg.get("measure.kind", std::string("uniform"));
    e.mu = build_measure(kind == "file" ? resolve(cfg.require("measure.path"), base_dir) : kind, e.manifold, r, mo);

    const int n0 = e.schedule.stages.front().N;
    const std::string init = cfg.get("init.curve", e.name);
    if (lower_ext(init) == ".json") {
        e.x0 = load_curve(resolve(init, base_dir)).curve;
        require_same(e.x0.manifold, e.manifold);
    } else {
        e.x0 = experiment_initial_curve(init, n0);
        require_same(e.x0.manifold, e.manifold);
    }
    e.x0 = jitter(e.x0, static_cast<std::uint64_t>(cfg.get("init.seed", 0)));

    e.cg = CgConfig(cfg.get("cg.iterations", 100), cfg.get("cg.armijo_a", 0.05), cfg.get("cg.armijo_b", 0.5),
                    cfg.get("cg.armijo_k_max", 50), cfg.get("cg.restart_extra", 0));
    e.cg.grad_tol = cfg.get("cg.grad_tol", e.cg.grad_tol);
    return e;
}

ExperimentSetup load_experiment_file(const std::string& path)
{
    return load_experiment(Config::load(path), fs::path(path).parent_path().string());
}

DiscreteCurve jitter(const DiscreteCurve& c, std::uint64_t seed, double scale)
{
    if (seed == 0) return c;
    Rng rng(seed);
    DiscreteCurve out = c;
    for (auto& p : out.points) p = exp_map(p, scale * random_tangent(p, rng));
    return out;
}

} // namespace curvedis
