#include "specnorm/kernels.hpp"

#include <cmath>
#include <algorithm>

namespace specnorm::kernels {

namespace {

int default_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int g_threads = 0;

std::size_t num_blocks(std::size_t n) { return (n + kBlock - 1) / kBlock; }

}  // namespace

void set_threads(int t) {
    g_threads = t < 1 ? 1 : t;
#ifdef _OPENMP
    omp_set_num_threads(g_threads);
#endif
}

int threads() {
    if (g_threads == 0) g_threads = default_threads();
    return g_threads;
}

namespace serial {

double abs_sum(std::span<const double> v) {
    double total = 0.0;
    for (std::size_t b = 0; b < num_blocks(v.size()); ++b) {
        const std::size_t end = std::min(v.size(), (b + 1) * kBlock);
        double part = 0.0;
        for (std::size_t i = b * kBlock; i < end; ++i) part += std::abs(v[i]);
        total += part;
    }
    return total;
}

double dot(std::span<const double> v, std::span<const double> w) {
    double total = 0.0;
    for (std::size_t b = 0; b < num_blocks(v.size()); ++b) {
        const std::size_t end = std::min(v.size(), (b + 1) * kBlock);
        double part = 0.0;
        for (std::size_t i = b * kBlock; i < end; ++i) part += v[i] * w[i];
        total += part;
    }
    return total;
}

void scale(std::span<double> v, double factor) {
    for (double& x : v) x *= factor;
}

}  // namespace serial

namespace omp {

namespace {

template <class Term>
double blocked_sum(std::size_t n, Term term) {
    const std::size_t nb = num_blocks(n);
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double part = 0.0;
        for (std::size_t i = lo; i < hi; ++i) part += term(i);
        partial[static_cast<std::size_t>(b)] = part;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace

double abs_sum(std::span<const double> v) {
    return blocked_sum(v.size(), [&](std::size_t i) { return std::abs(v[i]); });
}

double dot(std::span<const double> v, std::span<const double> w) {
    return blocked_sum(v.size(), [&](std::size_t i) { return v[i] * w[i]; });
}

void scale(std::span<double> v, double factor) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(v.size()); ++i) {
        v[static_cast<std::size_t>(i)] *= factor;
    }
}

}  // namespace omp

}  // namespace specnorm::kernels
