#include "slz/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace slz::simd {

namespace scalar {

double dot(const double* a, const double* b, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
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

}  // namespace scalar

namespace {

Isa detect() {
#if defined(__x86_64__) || defined(__i386__)
    if (avx2::compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

// SLZ_ISA=scalar pins the scalar kernels at startup.
Isa initial() {
    const char* e = std::getenv("SLZ_ISA");
    if (e && std::string_view(e) == "scalar") return Isa::Scalar;
    return detect();
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> a{initial()};
    return a;
}

}  // namespace

Isa detected_isa() {
    static const Isa d = detect();
    return d;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
    active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(const double* a, const double* b, size_t n) {
    return active_isa() == Isa::Avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    if (active_isa() == Isa::Avx2) avx2::axpy(alpha, x, y, n);
    else scalar::axpy(alpha, x, y, n);
}

void matmul(const double* a, const double* b, double* c, size_t m, size_t k, size_t p) {
    if (active_isa() == Isa::Avx2) avx2::matmul(a, b, c, m, k, p);
    else scalar::matmul(a, b, c, m, k, p);
}

double quad_form(const double* q, const double* x, size_t n) {
    return active_isa() == Isa::Avx2 ? avx2::quad_form(q, x, n) : scalar::quad_form(q, x, n);
}

}  // namespace slz::simd
