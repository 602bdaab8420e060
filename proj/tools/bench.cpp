// Compares the serial reference implementations of the two parallel kernels
// (canonical candidate scan, ring expansion) against their OpenMP variants,
// checking that outputs agree bit for bit.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tri4/canonical.hpp"
#include "tri4/families.hpp"
#include "tri4/search.hpp"

using namespace tri4;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void bench_canonical(int threads) {
    std::printf("canonical candidate scan (serial vs %d threads)\n", threads);
    struct Case {
        const char* name;
        Triangulation t;
    };
    std::vector<Case> cases = {
        {"P6", family(FamilyKind::P, 6)},
        {"E6", family(FamilyKind::E, 6)},
        {"D66", family(FamilyKind::D, 6, 6)},
    };
    for (auto& c : cases) {
        auto t0 = Clock::now();
        std::string serial = signature(c.t, 1);
        double t_serial = ms_since(t0);
        t0 = Clock::now();
        std::string parallel = signature(c.t, threads);
        double t_parallel = ms_since(t0);
        std::printf("  %-4s f4=%-3d serial %8.2f ms   parallel %8.2f ms   %s\n", c.name,
                    c.t.size(), t_serial, t_parallel,
                    serial == parallel ? "identical" : "MISMATCH");
    }
}

void bench_expansion(int threads) {
    std::printf("ring expansion via outside-in (serial vs %d threads)\n", threads);
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    for (int k : {4, 6}) {
        SearchConfig cfg;
        cfg.headroom = k;
        cfg.threads = 1;
        auto t0 = Clock::now();
        SearchOutcome serial = outside_in(a, b, cfg);
        double t_serial = ms_since(t0);
        cfg.threads = threads;
        t0 = Clock::now();
        SearchOutcome parallel = outside_in(a, b, cfg);
        double t_parallel = ms_since(t0);
        bool same = serial.result == parallel.result &&
                    serial.sequence.size() == parallel.sequence.size() &&
                    serial.stats.visited == parallel.stats.visited;
        for (size_t i = 0; same && i < serial.sequence.size(); ++i)
            same = serial.sequence[i] == parallel.sequence[i];
        std::printf("  k=%d  visited=%-7ld serial %8.2f ms   parallel %8.2f ms   %s\n", k,
                    serial.stats.visited, t_serial, t_parallel,
                    same ? "identical" : "MISMATCH");
    }
}

} // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : hardware_threads();
    if (threads < 2) threads = 2;
    bench_canonical(threads);
    bench_expansion(threads);
    return 0;
}
