#include <vector>

#include <benchmark/benchmark.h>

#include "curvedis/kernels.hpp"

using namespace curvedis;

namespace {

ManifoldId manifold_of(int code)
{
    switch (code) {
    case 0: return ManifoldId::torus(2);
    case 1: return ManifoldId::sphere2();
    case 2: return ManifoldId::so3();
    default: return ManifoldId::grass24();
    }
}

struct Setup {
    SpectralBasis basis;
    std::vector<Point> x;
    std::vector<cplx> w;

    Setup(int code, int r, int n) : basis(manifold_of(code), r)
    {
        Rng rng(0);
        for (int i = 0; i < n; ++i) x.push_back(random_point(basis.manifold(), rng));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::size_t k = 0; k < basis.size(); ++k) w.emplace_back(u(rng), u(rng));
    }
};

void bm_empirical_sum(benchmark::State& st, Exec exec)
{
    Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
    std::vector<cplx> out(s.basis.size());
    for (auto _ : st) {
        empirical_sum(s.basis, s.x, out.data(), exec);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(2));
}

void bm_gradient_contract(benchmark::State& st, Exec exec)
{
    Setup s(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
    std::vector<TangentVector> out(s.x.size());
    for (auto _ : st) {
        gradient_contract(s.basis, s.x, s.w.data(), 1.0, out.data(), exec);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(2));
}

// (manifold, degree, points)
void args(benchmark::internal::Benchmark* b)
{
    b->Args({0, 32, 1536})->Args({0, 64, 6144})->Args({1, 40, 1600})->Args({2, 12, 1000})->Args({3, 8, 1000});
    b->ArgNames({"manifold", "r", "N"})->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK_CAPTURE(bm_empirical_sum, serial, Exec::Serial)->Apply(args);
BENCHMARK_CAPTURE(bm_empirical_sum, parallel, Exec::Parallel)->Apply(args);
BENCHMARK_CAPTURE(bm_gradient_contract, serial, Exec::Serial)->Apply(args);
BENCHMARK_CAPTURE(bm_gradient_contract, parallel, Exec::Parallel)->Apply(args);

BENCHMARK_MAIN();
