#pragma once

#include <cstddef>

namespace slz::simd {

enum class Isa { Scalar, Avx2 };

// Best instruction set supported by this CPU and build.
Isa detected_isa();
// Kernel set used by the dispatching entry points below; defaults to detected_isa().
Isa active_isa();
// Overrides dispatch (tests compare variants); requesting an unsupported ISA falls back to scalar.
void set_active_isa(Isa isa);
const char* isa_name(Isa isa);

double dot(const double* a, const double* b, size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, size_t n);
// c = a * b with a (m x k), b (k x p), all row-major, c not aliasing a or b.
void matmul(const double* a, const double* b, double* c, size_t m, size_t k, size_t p);
// x^T q x for a row-major n x n matrix q.
double quad_form(const double* q, const double* x, size_t n);

namespace scalar {
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void matmul(const double* a, const double* b, double* c, size_t m, size_t k, size_t p);
double quad_form(const double* q, const double* x, size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void matmul(const double* a, const double* b, double* c, size_t m, size_t k, size_t p);
double quad_form(const double* q, const double* x, size_t n);
}  // namespace avx2

}  // namespace slz::simd
