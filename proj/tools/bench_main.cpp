// Benchmark comparing the OpenMP kernels against their serial reference
// implementations on generated instances.

#include <chrono>
#include <cstdio>

#include "wdc/cover.hpp"
#include "wdc/generators.hpp"

using namespace wdc;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

template <class Fn>
double time_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return ms_since(t0);
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
}

} // namespace

int main() {
    auto grid = gen_grid({120, 120});
    auto cactus = gen_cactus(4000, 7);

    std::vector<int> all(grid.num_vertices());
    for (int i = 0; i < grid.num_vertices(); ++i) all[i] = i;

    {
        ComponentPartition a, b;
        double s = time_ms([&] { a = r_components(grid, all, 2.0, Exec::serial); });
        double p = time_ms([&] { b = r_components(grid, all, 2.0, Exec::parallel); });
        if (a.classes != b.classes) std::printf("MISMATCH in r_components\n");
        report("r_components grid r=2", s, p);
    }
    {
        // weak diameter of a medium patch in the power graph
        std::vector<int> patch;
        for (int r = 40; r < 70; ++r)
            for (int c = 40; c < 70; ++c) patch.push_back(r * 120 + c);
        DistanceValue a, b;
        double s = time_ms([&] { a = weak_diameter(grid, patch, 2.0, Exec::serial); });
        double p = time_ms([&] { b = weak_diameter(grid, patch, 2.0, Exec::parallel); });
        if (!(a == b)) std::printf("MISMATCH in weak_diameter\n");
        report("weak_diameter 30x30 ell=2", s, p);
    }
    {
        Cover cover;
        cover.scale = 2.0;
        cover.bound = 300.0;
        cover.producer = "bench";
        cover.families.resize(2);
        for (int band = 0; band < 120; band += 2) {
            std::vector<int> even, odd;
            for (int c = 0; c < 120; ++c) {
                even.push_back(band * 120 + c);
                if (band + 1 < 120) odd.push_back((band + 1) * 120 + c);
            }
            cover.families[0].push_back(even);
            if (!odd.empty()) cover.families[1].push_back(odd);
        }
        MultiplicityReport a, b;
        double s = time_ms([&] { a = r_multiplicity(grid, cover, 3.0, Exec::serial); });
        double p = time_ms([&] { b = r_multiplicity(grid, cover, 3.0, Exec::parallel); });
        if (a.tau != b.tau) std::printf("MISMATCH in r_multiplicity\n");
        report("r_multiplicity grid r=3", s, p);

        CoverReport ra, rb;
        double vs = time_ms([&] { ra = verify_cover(grid, cover, std::nullopt, Exec::serial); });
        double vp = time_ms([&] { rb = verify_cover(grid, cover, std::nullopt, Exec::parallel); });
        if (ra.pass != rb.pass || ra.observed_bound != rb.observed_bound)
            std::printf("MISMATCH in verify_cover\n");
        report("verify_cover row bands", vs, vp);
    }
    {
        std::vector<int> call(cactus.num_vertices());
        for (int i = 0; i < cactus.num_vertices(); ++i) call[i] = i;
        ComponentPartition a, b;
        double s = time_ms([&] { a = r_components(cactus, call, 4.0, Exec::serial); });
        double p = time_ms([&] { b = r_components(cactus, call, 4.0, Exec::parallel); });
        if (a.classes != b.classes) std::printf("MISMATCH in r_components (cactus)\n");
        report("r_components cactus r=4", s, p);
    }
    return 0;
}
