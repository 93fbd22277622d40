#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "curvedis/export.hpp"
#include "curvedis/quadrature_curves.hpp"
#include "curvedis/setup.hpp"
#include "curvedis/verify.hpp"

using namespace curvedis;
namespace fs = std::filesystem;

namespace {

struct RunArgs {
    std::string config, manifold, measure, out = "out";
    std::optional<double> L0;
    std::optional<int> stages, iterations;
    int seed = 0;
};

void add_run_flags(CLI::App* app, RunArgs& a)
{
    app->add_option("--config", a.config, "experiment config file")->check(CLI::ExistingFile);
    app->add_option("--manifold", a.manifold, "torus2, torus3, sphere2, so3 or grass24 (without --config)");
    app->add_option("--measure", a.measure, "uniform, doughnut, doughnut_haar or a measure/image/grid/point file");
    app->add_option("--L0", a.L0, "first rung of the length ladder");
    app->add_option("--stages", a.stages, "number of ladder stages");
    app->add_option("--iterations", a.iterations, "CG iterations per stage");
    app->add_option("--seed", a.seed, "perturb the initial curve with this seed (0 keeps it)");
    app->add_option("--out", a.out, "output directory");
}

bool builtin_measure(const std::string& s) { return s == "uniform" || s == "doughnut" || s == "doughnut_haar"; }

ExperimentSetup setup_from(const RunArgs& a)
{
    Config cfg;
    std::string base;
    if (!a.config.empty()) {
        cfg = Config::load(a.config);
        base = fs::path(a.config).parent_path().string();
    } else {
        if (a.manifold.empty()) throw Error(ErrorKind::InvalidArgument, "give --config or --manifold");
        cfg.set("experiment.name", a.manifold);
        cfg.set("schedule.preset", "default");
    }
    if (!a.manifold.empty()) cfg.set("experiment.manifold", a.manifold);
    if (!a.measure.empty()) {
        cfg.set("measure.kind", builtin_measure(a.measure) ? a.measure : "file");
        if (!builtin_measure(a.measure)) cfg.set("measure.path", fs::absolute(a.measure).string());
    }
    if (a.L0) cfg.set("schedule.L0", std::to_string(*a.L0));
    if (a.stages) cfg.set("schedule.stages", std::to_string(*a.stages));
    if (a.iterations) cfg.set("cg.iterations", std::to_string(*a.iterations));
    cfg.set("init.seed", std::to_string(a.seed));
    return load_experiment(cfg, base);
}

Json stage_metadata(const StageResult& r)
{
    return {{"stage", r.index},   {"polish", r.polish},     {"L", r.stage.L},           {"N", r.stage.N},
            {"r", r.stage.r},     {"lambda", r.stage.lambda}, {"disc_sq", r.disc_sq},   {"length", r.length},
            {"max_speed", r.max_speed}, {"termination", r.error.empty() ? r.trace.termination : r.error}};
}

std::vector<StageResult> run(const ExperimentSetup& e, const std::string& out)
{
    fs::create_directories(out);
    std::printf("%s: %zu stages%s, measure degree %d\n", e.name.c_str(), e.schedule.stages.size(),
                e.schedule.polish.enabled ? " + polish" : "", e.mu.degree);
    ContinuationOptions opt;
    opt.cg = e.cg;
    opt.on_stage = [&](const StageResult& r) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%02d", r.polish ? "polish" : "stage", r.index);
        save_curve((fs::path(out) / (std::string(name) + ".json")).string(), r.curve, stage_metadata(r));
        write_file_atomic((fs::path(out) / (std::string(name) + "_trace.csv")).string(), r.trace.to_csv());
        std::printf("%-9s L=%-9.4g N=%-7d r=%-4d lambda=%-10.3g D2=%-12.5g length=%-9.4g speed=%-9.4g %s\n", name,
                    r.stage.L, r.stage.N, r.stage.r, r.stage.lambda, r.disc_sq, r.length, r.max_speed,
                    r.error.empty() ? r.trace.termination.c_str() : ("FAILED: " + r.error).c_str());
        std::fflush(stdout);
    };
    auto res = run_continuation(e.mu, e.schedule, e.x0, opt);
    save_curve((fs::path(out) / "curve.json").string(), res.back().curve, stage_metadata(res.back()));
    return res;
}

int cmd_construct(const std::string& kind, int d, int r, int n, const std::string& out)
{
    Json meta = {{"construction", kind}, {"d", d}, {"r", r}};
    DiscreteCurve c;
    if (kind == "torus") {
        const AnalyticCurve a = torus_quadrature_curve(d, r);
        meta["speed"] = a.lipschitz();
        meta["length"] = a.length();
        c = discretize(a, n);
    } else if (kind == "sphere2") {
        const AnalyticCurve a = sphere2_quadrature_curve(r);
        meta["speed"] = a.lipschitz();
        meta["length"] = a.length();
        c = discretize(a, n);
    } else if (kind == "sphere-density" || kind == "so3") {
        if (kind == "sphere-density" && d != 2) throw Error(ErrorKind::Unsupported, "sampled curves with density live on S^2 only");
        auto [a, rho] = kind == "so3" ? so3_quadrature_curve(r) : sphere_d_curve_with_density(2, r);
        meta["length"] = a.length();
        meta["density_lipschitz"] = rho.lipschitz;
        // constant-speed version, so the samples carry equal weight
        c = discretize(reparametrize_constant_speed(a, rho), n);
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown construction '" + kind + "'");
    }
    meta["N"] = n;
    if (out.empty()) std::cout << curve_to_json(c, meta);
    else save_curve(out, c, meta);
    return 0;
}

int cmd_verify(std::vector<std::string> suites, const std::string& out)
{
    if (suites.empty()) suites = verify_suites();
    bool ok = true;
    Json all = Json::array();
    for (const auto& s : suites) {
        const VerifyReport rep = run_verify(s);
        ok = ok && rep.passed();
        all.push_back(Json::parse(rep.to_json()));
        for (const auto& c : rep.checks)
            std::printf("%-4s %-12s %-45s value=%.3e threshold=%.1e\n", c.pass ? "ok" : "FAIL", s.c_str(), c.name.c_str(),
                        c.value, c.threshold);
    }
    if (!out.empty()) write_file_atomic(out, all.dump(1) + "\n");
    std::printf("%s\n", ok ? "all checks passed" : "some checks failed");
    return ok ? 0 : 1;
}

int cmd_ingest(const std::string& input, const std::string& manifold, int degree, const MeasureOptions& mo,
               const std::string& out)
{
    const SpectralMeasure mu = build_measure(input, ManifoldId::from_tag(manifold), degree, mo);
    save_measure(out, mu);
    std::printf("wrote %s: %s, degree %d\n", out.c_str(), mu.manifold.tag().c_str(), mu.degree);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"curvedis: curves whose push-forward measures approximate a target measure"};
    app.require_subcommand(1);

    RunArgs min_args, decay_args;
    add_run_flags(app.add_subcommand("minimize", "run the continuation ladder and write the stage curves"), min_args);
    add_run_flags(app.add_subcommand("decay", "continuation run plus the decay table and slope fit"), decay_args);

    auto* construct = app.add_subcommand("construct", "sample an exact-quadrature curve");
    std::string ckind = "torus", cout;
    int cd = 2, cr = 4, cn = 256;
    construct->add_option("kind", ckind, "torus, sphere2, sphere-density or so3")->required();
    construct->add_option("--d", cd, "torus dimension");
    construct->add_option("--r", cr, "polynomial degree");
    construct->add_option("--N", cn, "number of samples");
    construct->add_option("--out", cout, "curve file (stdout if empty)");

    auto* verify = app.add_subcommand("verify", "run verification suites; exit code 1 on failure");
    std::vector<std::string> suites;
    std::string vout;
    verify->add_option("--suite", suites, "quadrature, gradient, kernel, gamma-proxy (default: all)");
    verify->add_option("--out", vout, "JSON report file");

    auto* exp = app.add_subcommand("export", "figure data for a curve file");
    std::string ecurve, eformat, eout;
    exp->add_option("curve", ecurve, "curve file")->required()->check(CLI::ExistingFile);
    exp->add_option("--format", eformat, "svg (torus2) or csv")->required();
    exp->add_option("--out", eout, "output file (stdout if empty)");

    auto* ingest = app.add_subcommand("ingest", "turn an image, sphere grid or point list into a measure file");
    std::string iinput, imanifold, iout;
    int idegree = 16;
    MeasureOptions mo;
    ingest->add_option("input", iinput, "PGM image (torus2), sphere grid (sphere2) or point list (torus)")
        ->required()
        ->check(CLI::ExistingFile);
    ingest->add_option("--manifold", imanifold, "manifold tag")->required();
    ingest->add_option("--degree", idegree, "polynomial degree");
    ingest->add_flag("--invert", mo.invert, "dark pixels carry the mass");
    ingest->add_option("--sharpness", mo.sharpness, "Gaussian peak sharpness for point lists");
    ingest->add_option("--grid", mo.grid, "DFT grid size for point lists");
    ingest->add_option("--out", iout, "measure file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("minimize")) {
            run(setup_from(min_args), min_args.out);
            return 0;
        }
        if (app.got_subcommand("decay")) {
            const ExperimentSetup e = setup_from(decay_args);
            if (e.schedule.stages.size() < 3) throw Error(ErrorKind::InvalidArgument, "decay needs at least three stages");
            const DecayTable t = decay_table(run(e, decay_args.out), e.smooth.s, e.smooth.support_dim);
            write_file_atomic((fs::path(decay_args.out) / "decay.csv").string(), t.to_csv());
            std::printf("slope vs L %.4f, vs length %.4f, reference %.4f\n", t.slope_vs_L, t.slope_vs_length, t.reference);
            return 0;
        }
        if (app.got_subcommand("construct")) return cmd_construct(ckind, cd, cr, cn, cout);
        if (app.got_subcommand("verify")) return cmd_verify(suites, vout);
        if (app.got_subcommand("export")) {
            const std::string s = export_visualization(load_curve(ecurve).curve, eformat);
            if (eout.empty()) std::cout << s;
            else write_file_atomic(eout, s);
            return 0;
        }
        if (app.got_subcommand("ingest")) return cmd_ingest(iinput, imanifold, idegree, mo, iout);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
