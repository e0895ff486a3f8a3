// Serial vs OpenMP kernels: median and p90 wall time per call.
//   bench_kernels [n_min] [n_max] [reps] [threads]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <vector>

#include "specnorm/kernels.hpp"
#include "specnorm/rng.hpp"

using namespace specnorm;

namespace {

struct Timing {
    double median;
    double p90;
};

template <class Fn>
Timing measure(int reps, Fn&& fn) {
    std::vector<double> t;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    return {t[t.size() / 2], t[std::min(t.size() - 1, t.size() * 9 / 10)]};
}

void row(const char* kernel, int n, Timing s, Timing p) {
    std::printf("%-10s n=%-3d serial %9.3f ms (p90 %9.3f)   omp %9.3f ms (p90 %9.3f)   speedup %.2fx\n",
                kernel, n, s.median * 1e3, s.p90 * 1e3, p.median * 1e3, p.p90 * 1e3, s.median / p.median);
}

}  // namespace

int main(int argc, char** argv) {
    const int n_min = argc > 1 ? std::atoi(argv[1]) : 14;
    const int n_max = argc > 2 ? std::atoi(argv[2]) : 22;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 7;
    if (argc > 4) kernels::set_threads(std::atoi(argv[4]));
    std::printf("threads=%d reps=%d\n", kernels::threads(), reps);

    Rng rng(5);
    double sink = 0;
    for (int n = n_min; n <= n_max; ++n) {
        std::vector<double> base(std::size_t{1} << n);
        for (double& v : base) v = rng.uniform(-1.0, 1.0);
        std::vector<double> work = base;

        const Timing bs = measure(reps, [&] {
            work = base;
            kernels::serial::butterfly(std::span<double>(work));
        });
        const Timing bp = measure(reps, [&] {
            work = base;
            kernels::omp::butterfly(std::span<double>(work));
        });
        row("butterfly", n, bs, bp);

        const Timing as = measure(reps, [&] { sink += kernels::serial::abs_sum(base); });
        const Timing ap = measure(reps, [&] { sink += kernels::omp::abs_sum(base); });
        row("abs_sum", n, as, ap);
    }
    std::printf("checksum %.6g\n", sink);
    return 0;
}
