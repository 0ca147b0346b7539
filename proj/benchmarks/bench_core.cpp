#include <benchmark/benchmark.h>

#include <numbers>

#include "implab/fatou.hpp"
#include "implab/julia.hpp"
#include "implab/lavaurs.hpp"
#include "implab/mapfamily.hpp"

using namespace implab;

namespace {

const PolyMap2& fam() {
    static const PolyMap2 m = PolyMap2::default_family();
    return m;
}

GridSpec slice(std::size_t n) {
    GridSpec g;
    g.origin = {{-1.5, -1.1}, 0.0};
    g.axis_u = {2.2, 0.0};
    g.axis_v = {Complex{0.0, 2.2}, 0.0};
    g.nx = g.ny = n;
    g.max_iter = 2000;
    return g;
}

void BM_EvalF(benchmark::State& st) {
    ComplexPoint p{{-0.1, 0.01}, 0.001};
    const Complex eps = st.range(0) ? Complex{0.01} : Complex{};
    for (auto _ : st) {
        p = eval_F(fam(), eps, p);
        benchmark::DoNotOptimize(p);
        if (std::abs(p.x) < 1e-3) p = {{-0.1, 0.01}, 0.001};
    }
}
BENCHMARK(BM_EvalF)->Arg(0)->Arg(1);

void BM_EvalFInverse(benchmark::State& st) {
    const ComplexPoint p{{0.05, 0.002}, 0.001};
    for (auto _ : st) benchmark::DoNotOptimize(eval_F_inverse(fam(), 0.0, p));
}
BENCHMARK(BM_EvalFInverse);

void BM_OrbitError(benchmark::State& st) {
    const ComplexPoint p{{-0.1, 0.001}, 0.0005};
    for (auto _ : st) benchmark::DoNotOptimize(orbit_error(fam(), 0.01, p));
}
BENCHMARK(BM_OrbitError);

void BM_EscapeTime(benchmark::State& st) {
    const double R = escape_bound(fam(), 0.0);
    // A bounded basin point runs the full budget.
    for (auto _ : st) benchmark::DoNotOptimize(escape_time(fam(), 0.0, {-0.3, 0.0}, R, 2000));
}
BENCHMARK(BM_EscapeTime);

void BM_PhiIota(benchmark::State& st) {
    const double tol = std::pow(10.0, -static_cast<double>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(phi_iota(fam(), {-0.05, 0.001}, tol));
}
BENCHMARK(BM_PhiIota)->Arg(6)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_PhiO(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(phi_o(fam(), {0.05, 0.0005}, 1e-9));
}
BENCHMARK(BM_PhiO)->Unit(benchmark::kMicrosecond);

void BM_Lavaurs2d(benchmark::State& st) {
    const auto seq = make_alpha_sequence(-12.0, {200, 400, 800, 1600});
    LavaursOptions opt;
    opt.threads = 1;
    for (auto _ : st) benchmark::DoNotOptimize(lavaurs_2d_estimate(fam(), seq, {-0.2, 0.001}, opt));
}
BENCHMARK(BM_Lavaurs2d)->Unit(benchmark::kMicrosecond);

void BM_RenderSlice(benchmark::State& st) {
    const auto g = slice(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(render_K_slice(fam(), std::numbers::pi / 400, g, 1));
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}
BENCHMARK(BM_RenderSlice)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Hausdorff(benchmark::State& st) {
    const auto a = bounded_mask(render_K_slice(fam(), 0.0, slice(256), 1));
    const auto b = bounded_mask(render_K_slice(fam(), std::numbers::pi / 400, slice(256), 1));
    for (auto _ : st) benchmark::DoNotOptimize(hausdorff_grid(a, b));
}
BENCHMARK(BM_Hausdorff)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
