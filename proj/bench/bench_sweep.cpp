// Times the serial reference sweep against the OpenMP one on the same grids
// and checks that both return identical reports.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "nullity/bundles.hpp"
#include "nullity/catalog.hpp"
#include "nullity/report.hpp"
#include "nullity/sweep.hpp"

using namespace nullity;

namespace {

template <class F>
double seconds(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < reps; ++k) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

template <class R, class F>
bool bench(const char* label, const Grid& grid, F f, int reps) {
    std::vector<R> a, b;
    const double ts = seconds([&] { a = sweep_serial<R>(grid, f); }, reps);
    const double tp = seconds([&] { b = sweep_parallel<R>(grid, f); }, reps);
    bool same = a.size() == b.size();
    for (std::size_t k = 0; same && k < a.size(); ++k) same = report_json(a[k]).dump() == report_json(b[k]).dump();
    std::printf("%-28s %6zu points  serial %8.4f s  parallel %8.4f s  speedup %5.2f  %s\n", label, grid.size(), ts, tp,
                ts / tp, same ? "identical" : "MISMATCH");
    return same;
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("threads: %d, repetitions: %d\n", omp_get_max_threads(), reps);
    bool ok = true;

    const ImmersionChart surface = make_fixture("weierstrass-random").chart;
    ok &= bench<SurfaceReport>("analyze weierstrass-random", domain_grid(surface, {21, 21}),
                               [&](const std::vector<double>& p) { return analyze_surface(surface, p); }, reps);

    const ImmersionChart bipolar = unit_tangent_chart(make_fixture("weierstrass-demo5").chart).chart;
    ok &= bench<BundlePointReport>("bipolar demo5 + splitting", domain_grid(bipolar, {5, 5, 8}),
                                   [&](const std::vector<double>& p) { return analyze_bundle_point(bipolar, p, true); },
                                   reps);

    const ImmersionChart polar = unit_normal_chart(make_veronese()).chart;
    ok &= bench<BundlePointReport>("polar veronese", domain_grid(polar, {9, 9, 16}),
                                   [&](const std::vector<double>& p) { return analyze_bundle_point(polar, p, false); },
                                   reps);
    return ok ? 0 : 1;
}
