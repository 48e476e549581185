#include "simd_internal.hpp"

#if defined(SIRI_COMPILE_AVX2) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace siri::simd::detail {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k),
                               _mm256_loadu_pd(b + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4),
                               _mm256_loadu_pd(b + k + 4), acc1);
    }
    for (; k + 4 <= n; k += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k),
                               _mm256_loadu_pd(b + k), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

double dot_rev_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d va = _mm256_loadu_pd(a + k);
        // {b[-k-3], b[-k-2], b[-k-1], b[-k]} reversed into descending order.
        __m256d vb = _mm256_loadu_pd(b - static_cast<std::ptrdiff_t>(k) - 3);
        vb = _mm256_permute4x64_pd(vb, 0x1B);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double s = hsum(acc);
    for (; k < n; ++k) s += a[k] * b[-static_cast<std::ptrdiff_t>(k)];
    return s;
}

void hermite_half_avx2(const double* y, const double* d, double dt,
                       double* out, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d c = _mm256_set1_pd(0.125 * dt);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d y0 = _mm256_loadu_pd(y + k);
        __m256d y1 = _mm256_loadu_pd(y + k + 1);
        __m256d d0 = _mm256_loadu_pd(d + k);
        __m256d d1 = _mm256_loadu_pd(d + k + 1);
        __m256d mid = _mm256_fmadd_pd(c, _mm256_sub_pd(d0, d1),
                                      _mm256_mul_pd(half, _mm256_add_pd(y0, y1)));
        _mm256_storeu_pd(out + k, mid);
    }
    for (; k < n; ++k)
        out[k] = 0.5 * (y[k] + y[k + 1]) + 0.125 * dt * (d[k] - d[k + 1]);
}

double saturated_sum_avx2(const double* w, const double* x, double alpha,
                          std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d ones = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d vw = _mm256_loadu_pd(w + k);
        __m256d vx = _mm256_loadu_pd(x + k);
        __m256d den = _mm256_fmadd_pd(va, vx, ones);
        acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(vw, vx), den));
    }
    double s = hsum(acc);
    for (; k < n; ++k) s += w[k] * x[k] / (1.0 + alpha * x[k]);
    return s;
}

}  // namespace

const Ops* avx2_table() {
    static const Ops table{dot_avx2, dot_rev_avx2, hermite_half_avx2,
                           saturated_sum_avx2, "avx2"};
    return &table;
}

}  // namespace siri::simd::detail

#else

namespace siri::simd::detail {

const Ops* avx2_table() { return nullptr; }

}  // namespace siri::simd::detail

#endif
