#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference and an OpenMP version. Both perform the same floating-point
// operations in the same per-element order, so their outputs are
// bit-identical for any thread count.

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specnorm::kernels {

/// Elements per block in the blocked reduction and in the cache-resident
/// butterfly stages.
inline constexpr std::size_t kBlock = std::size_t{1} << 12;

/// Arrays shorter than this always take the serial path.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

void set_threads(int threads);
int threads();

namespace serial {

/// Unnormalized in-place Walsh-Hadamard butterfly, stages ascending,
/// indices ascending. Length must be a power of two.
template <class T>
void butterfly(std::span<T> v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const T a = v[j];
                const T b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

/// Sum of |v[i]|: per-block partial sums, then the partials in order.
double abs_sum(std::span<const double> v);

/// Sum of v[i]*w[i], same reduction tree as abs_sum.
double dot(std::span<const double> v, std::span<const double> w);

void scale(std::span<double> v, double factor);

}  // namespace serial

namespace omp {

template <class T>
void butterfly(std::span<T> v) {
    const std::size_t n = v.size();
    const std::size_t block = n < kBlock ? n : kBlock;
    // Stages with h < block stay inside one block; blocks are independent.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(n / block); ++bi) {
        serial::butterfly(v.subspan(static_cast<std::size_t>(bi) * block, block));
    }
    for (std::size_t h = block; h < n; h <<= 1) {
        const std::size_t half = n >> 1;
        const int shift = std::countr_zero(h);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(half); ++k) {
            const std::size_t uk = static_cast<std::size_t>(k);
            const std::size_t j = ((uk >> shift) << (shift + 1)) | (uk & (h - 1));
            const T a = v[j];
            const T b = v[j + h];
            v[j] = a + b;
            v[j + h] = a - b;
        }
    }
}

double abs_sum(std::span<const double> v);
double dot(std::span<const double> v, std::span<const double> w);
void scale(std::span<double> v, double factor);

}  // namespace omp

// Dispatch: OpenMP path for large arrays when more than one thread is allowed.
inline bool use_parallel(std::size_t n) {
    return n >= kParallelThreshold && threads() > 1;
}

template <class T>
void butterfly(std::span<T> v) {
    if (use_parallel(v.size())) omp::butterfly(v);
    else serial::butterfly(v);
}

inline double abs_sum(std::span<const double> v) {
    return use_parallel(v.size()) ? omp::abs_sum(v) : serial::abs_sum(v);
}

inline double dot(std::span<const double> v, std::span<const double> w) {
    return use_parallel(v.size()) ? omp::dot(v, w) : serial::dot(v, w);
}

inline void scale(std::span<double> v, double factor) {
    if (use_parallel(v.size())) omp::scale(v, factor);
    else serial::scale(v, factor);
}

}  // namespace specnorm::kernels
