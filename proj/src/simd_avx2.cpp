#include "slz/simd.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define SLZ_HAVE_AVX2 1
#endif

namespace slz::simd::avx2 {

#ifdef SLZ_HAVE_AVX2

bool compiled() { return true; }

namespace {
double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
}  // namespace

double dot(const double* a, const double* b, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    __m256d al = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(al, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void matmul(const double* a, const double* b, double* c, size_t m, size_t k, size_t p) {
    for (size_t i = 0; i < m; ++i) {
        double* ci = c + i * p;
        for (size_t j = 0; j < p; ++j) ci[j] = 0;
        for (size_t t = 0; t < k; ++t) axpy(a[i * k + t], b + t * p, ci, p);
    }
}

double quad_form(const double* q, const double* x, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += x[i] * dot(q + i * n, x, n);
    return s;
}

#else

bool compiled() { return false; }
double dot(const double* a, const double* b, size_t n) { return scalar::dot(a, b, n); }
void axpy(double alpha, const double* x, double* y, size_t n) { scalar::axpy(alpha, x, y, n); }
void matmul(const double* a, const double* b, double* c, size_t m, size_t k, size_t p) {
    scalar::matmul(a, b, c, m, k, p);
}
double quad_form(const double* q, const double* x, size_t n) { return scalar::quad_form(q, x, n); }

#endif

}  // namespace slz::simd::avx2
