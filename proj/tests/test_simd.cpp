#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "slz/reduction.hpp"
#include "slz/simd.hpp"
#include "slz/symspace.hpp"

using namespace slz;

namespace {
std::vector<double> rand_vec(size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3, 3);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}
double rel(double a, double b) { return std::abs(a - b) / (1 + std::abs(a) + std::abs(b)); }

struct IsaGuard {
    simd::Isa saved = simd::active_isa();
    ~IsaGuard() { simd::set_active_isa(saved); }
};
}  // namespace

TEST_CASE("dispatch reports an isa") {
    MESSAGE("detected isa: " << simd::isa_name(simd::detected_isa()));
    IsaGuard g;
    simd::set_active_isa(simd::Isa::Scalar);
    CHECK(simd::active_isa() == simd::Isa::Scalar);
    simd::set_active_isa(simd::Isa::Avx2);
    CHECK(simd::active_isa() == (simd::detected_isa() == simd::Isa::Avx2 ? simd::Isa::Avx2 : simd::Isa::Scalar));
}

TEST_CASE("scalar kernels against direct loops") {
    std::mt19937_64 rng(1);
    auto a = rand_vec(7, rng), b = rand_vec(7, rng);
    double d = 0;
    for (int i = 0; i < 7; ++i) d += a[i] * b[i];
    CHECK(rel(simd::scalar::dot(a.data(), b.data(), 7), d) < 1e-15);
    auto y = b;
    simd::scalar::axpy(2.5, a.data(), y.data(), 7);
    for (int i = 0; i < 7; ++i) CHECK(y[i] == b[i] + 2.5 * a[i]);
}

TEST_CASE("avx2 kernels match scalar kernels") {
    if (!simd::avx2::compiled() || simd::detected_isa() != simd::Isa::Avx2) {
        MESSAGE("AVX2 unavailable; skipped");
        return;
    }
    std::mt19937_64 rng(2);
    for (size_t n : {0, 1, 3, 4, 5, 7, 8, 13, 16, 33, 100}) {
        auto a = rand_vec(n, rng), b = rand_vec(n, rng);
        CHECK(rel(simd::avx2::dot(a.data(), b.data(), n), simd::scalar::dot(a.data(), b.data(), n)) < 1e-13);
        auto y1 = b, y2 = b;
        simd::avx2::axpy(-0.75, a.data(), y1.data(), n);
        simd::scalar::axpy(-0.75, a.data(), y2.data(), n);
        for (size_t i = 0; i < n; ++i) CHECK(rel(y1[i], y2[i]) < 1e-15);
        auto q = rand_vec(n * n, rng);
        CHECK(rel(simd::avx2::quad_form(q.data(), a.data(), n), simd::scalar::quad_form(q.data(), a.data(), n)) < 1e-12);
    }
    for (auto [m, k, p] : {std::tuple<size_t, size_t, size_t>{1, 1, 1}, {3, 5, 2}, {5, 5, 5}, {4, 9, 7}, {8, 8, 8}, {6, 3, 11}}) {
        auto a = rand_vec(m * k, rng), b = rand_vec(k * p, rng);
        std::vector<double> c1(m * p), c2(m * p);
        simd::avx2::matmul(a.data(), b.data(), c1.data(), m, k, p);
        simd::scalar::matmul(a.data(), b.data(), c2.data(), m, k, p);
        for (size_t i = 0; i < m * p; ++i) CHECK(rel(c1[i], c2[i]) < 1e-13);
    }
}

TEST_CASE("reduction agrees under both kernel sets") {
    IsaGuard g;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd(0, 1.5);
    for (int t = 0; t < 30; ++t) {
        Mat F(5, 5);
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c) F(r, c) = nd(rng);
        simd::set_active_isa(simd::Isa::Scalar);
        auto s = siegel_reduce_factor(F);
        simd::set_active_isa(simd::Isa::Avx2);
        auto v = siegel_reduce_factor(F);
        CHECK(s.gamma == v.gamma);
        CHECK((s.aPart - v.aPart).norm() < 1e-9);
    }
}
