#include <doctest.h>

#include <cmath>
#include <random>

#include "reduction_gen.hpp"
#include "slz/calibration.hpp"
#include "slz/presentation.hpp"
#include "slz/reduction.hpp"
#include "slz/shortcut.hpp"

using namespace slz;
using namespace slz::testing;
using L = Letter;

namespace {
bool is_signed_diagonal(const GroupElement& g) {
    for (int r = 0; r < g.n(); ++r)
        for (int c = 0; c < g.n(); ++c) {
            const Int& v = g(r, c);
            if (r == c ? !(v == Int(1) || v == Int(-1)) : !v.is_zero()) return false;
        }
    return true;
}
}  // namespace

TEST_CASE("siegel_epsilon from the Lovasz parameter") {
    CHECK(siegel_epsilon() == doctest::Approx(std::sqrt(0.99 - 0.25)));
}

TEST_CASE("reduce the identity") {
    auto d = siegel_reduce(point_of(GroupElement::identity(5)));
    CHECK(d.gamma.is_identity());
    CHECK((d.nPart - Mat::Identity(5, 5)).norm() < 1e-12);
    CHECK((d.aPart - Eigen::VectorXd::Ones(5)).norm() < 1e-12);
}

TEST_CASE("interior Siegel points reduce to a stabilizer element") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto s = forward_sample(5, {0.8, 1.1, 0.5, 0.9}, 0, rng, 0.4);
        auto x = SPDPoint::from_factor(s.factor);
        auto d = siegel_reduce(x);
        CHECK(is_signed_diagonal(d.gamma));
        CHECK(reconstruction_error(x, d) < 1e-9);
        CHECK((d.aPart - s.a).norm() < 1e-9);
    }
}

TEST_CASE("forward-constructed points recover aPart") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        std::uniform_real_distribution<double> g(0.7, 4.0);
        auto s = forward_sample(5, {g(rng), g(rng), g(rng), g(rng)}, 8 + t % 10, rng);
        auto x = SPDPoint::from_factor(s.factor);
        auto d = siegel_reduce(x);
        for (int i = 0; i < 5; ++i) CHECK(std::abs(d.aPart(i) / s.a(i) - 1) < 1e-4);
        CHECK(reconstruction_error(x, d) < 1e-6);
        CHECK(siegel_violation(d) < 1e-6);
        CHECK(multiply(d.gamma, d.gamma_inv).is_identity());
    }
}

TEST_CASE("phi examples") {
    auto a = phi(point_of(GroupElement::identity(5)));
    CHECK((a - Eigen::VectorXd::Ones(5)).norm() < 1e-12);
    const double tt = 37.5;
    Eigen::VectorXd dg(5);
    dg << tt, 1, 1, 1, 1 / tt;
    auto b = phi(point_of(Mat(dg.asDiagonal())));
    CHECK((b - dg).norm() < 1e-9 * tt);
}

TEST_CASE("property: reconstruction and Siegel membership on random points") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd(0, 1);
    for (int t = 0; t < 200; ++t) {
        int n = 3 + t % 4;
        Mat F(n, n);
        double scale = 0.5 + (t % 7);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) F(r, c) = nd(rng) * std::exp(scale * nd(rng) / 3);
        auto x = SPDPoint::from_factor(F);
        auto d = siegel_reduce(x);
        double D = dist(point_of(GroupElement::identity(n)), x);
        CHECK(reconstruction_error(x, d) <= 1e-6 * (1 + D));
        CHECK(siegel_violation(d) <= 1e-6);
        CHECK(d.aPart.prod() == doctest::Approx(1.0).epsilon(1e-9));
        auto d2 = siegel_reduce(x);
        CHECK(d2.gamma == d.gamma);  // deterministic
    }
}

TEST_CASE("phi moves no farther than the points, up to a constant") {
    auto sweep = measure_c_phi(5, 60, 3, 2.0, 20.0, 0.5, 17);
    REQUIRE(sweep.c_phi.size() == 3);
    for (double c : sweep.c_phi) CHECK(c <= 0.5);
}

TEST_CASE("classify_parabolic") {
    CHECK(classify_parabolic(Eigen::VectorXd::Ones(5), 1.0) == ParabolicShape::whole(5));
    Eigen::VectorXd a(5);
    a << std::exp(7.2), std::exp(7.2), std::exp(-4.8), std::exp(-4.8), std::exp(-4.8);
    CHECK(classify_parabolic(a, kDefaultT0) == ParabolicShape::from_composition({2, 3}));
    CHECK(classify_parabolic(a, 65536.0) == ParabolicShape::from_composition({2, 3}));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> g(0, 6);
    for (int t = 0; t < 100; ++t) {
        auto b = a_from_log_gaps({g(rng), g(rng), g(rng), g(rng)});
        double t1 = std::exp(g(rng)), t2 = t1 * std::exp(g(rng));
        uint32_t m1 = classify_parabolic(b, t1).boundaries(), m2 = classify_parabolic(b, t2).boundaries();
        CHECK((m2 & ~m1) == 0u);  // coarser or equal for larger t
    }
}

TEST_CASE("short_vector_span examples") {
    auto I = point_of(GroupElement::identity(4));
    CHECK(short_vector_span(I, 0.5).rank() == 0);
    auto full = short_vector_span(I, 1.0);
    CHECK(full.rank() == 4);
    CHECK(full == hermite_span({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK_THROWS_AS(short_vector_span(I, 30.0, 1000), ReductionError);
}

TEST_CASE("short vectors span the predicted flag member") {
    std::mt19937_64 rng(5);
    const double cV = std::sqrt(5.0) * std::pow(siegel_epsilon(), -5);
    for (int t = 0; t < 12; ++t) {
        int j = 1 + t % 4;  // gap after index j
        std::vector<double> gaps(4, 0.3);
        gaps[j - 1] = std::log(400.0);
        auto s = forward_sample(5, gaps, 4 + t % 3, rng);
        auto x = SPDPoint::from_factor(s.factor);
        auto d = siegel_reduce(x);
        double lo = cV * d.aPart(j), hi = d.aPart(j - 1) / cV;
        REQUIRE(lo < hi);
        // Lower end of the window keeps the enumeration small.
        double r = std::min(2 * lo, std::sqrt(lo * hi));
        std::vector<IntVec> rows;
        for (int k = j; k < 5; ++k) {
            IntVec v(5);
            for (int c = 0; c < 5; ++c) v[c] = d.gamma_inv(k, c);
            rows.push_back(v);
        }
        auto predicted = hermite_span(rows, 5);
        auto got = short_vector_span(x, r);
        CHECK(got == predicted);
        CHECK(brute_short_span(s, r) == predicted);
    }
}

TEST_CASE("parabolic_decompose") {
    auto P = ParabolicShape::from_composition({2, 3});
    auto [n0, m0] = parabolic_decompose(GroupElement::identity(5), P);
    CHECK(n0.is_identity());
    CHECK(m0.is_identity());
    Int x = Int::pow2(50) + Int(3);
    GroupElement s12 = evaluate(s_word(1, 2), 5);
    GroupElement g = multiply(GroupElement::elementary(5, 1, 3, x), s12);
    auto [nn, mm] = parabolic_decompose(g, P);
    CHECK(mm == s12);
    CHECK(multiply(nn, mm) == g);
    CHECK(P.contains_N(nn));
    CHECK(P.contains_M(mm));
    CHECK_THROWS_AS(parabolic_decompose(GroupElement::elementary(5, 4, 2, 1), P), std::invalid_argument);
}

TEST_CASE("m_word") {
    auto G = ParabolicShape::whole(5);
    CHECK(m_word(GroupElement::identity(5), G).empty());
    GroupElement s12 = evaluate(s_word(1, 2), 5);
    Word w = m_word(s12, G);
    CHECK(w.size() == 3);
    CHECK(evaluate(w, 5) == s12);
    MESSAGE("m_word(s_12) = " << format_word(w));

    auto P = ParabolicShape::from_composition({2, 3});
    std::mt19937_64 rng(6);
    auto pairs = P.chi_M();
    for (int t = 0; t < 60; ++t) {
        size_t len = 1 + t % 5;
        Word u;
        for (size_t k = 0; k < len; ++k) {
            auto [i, j] = pairs[rng() % pairs.size()];
            u.push_back(L::elem(i, j, rng() % 2 ? 1 : -1));
        }
        GroupElement m = evaluate(u, 5);
        Word found = m_word(m, P);
        CHECK(found.size() <= u.size());
        CHECK(evaluate(found, 5) == m);
        for (const auto& a : found) CHECK((a.kind == Letter::Kind::Diag || P.in_M(a.i, a.j)));
    }
    CHECK_THROWS(m_word(GroupElement::elementary(5, 1, 4, 1), P));
}

TEST_CASE("m_word fallback for far elements") {
    auto G = ParabolicShape::whole(4);
    GroupElement far = evaluate({L::elem(1, 2), L::elem(2, 3), L::elem(3, 4), L::elem(4, 1), L::elem(2, 1),
                                 L::elem(3, 2), L::elem(4, 3), L::elem(1, 4)},
                                4);
    far = multiply(far, far);
    Word w = m_word(far, G, {1000, 3, true});
    CHECK(evaluate(w, 4) == far);
    CHECK_THROWS(m_word(far, G, {1000, 3, false}));
}

TEST_CASE("edge_word examples") {
    auto P = ParabolicShape::from_composition({2, 3});
    CHECK(edge_word(GroupElement::identity(5), P, P).empty());
    Int x = Int::pow2(40);
    CHECK(edge_word(GroupElement::elementary(5, 1, 4, x), P, P) == Word{L::shortcut(1, 4, x)});

    auto Pp = ParabolicShape::from_composition({1, 1, 3});
    GroupElement g = multiply(GroupElement::elementary(5, 1, 2, 3), GroupElement::elementary(5, 1, 4, x));
    Word w = edge_word(g, P, Pp);
    CHECK(evaluate(w, 5) == g);
    size_t plain12 = 0, shorts = 0;
    for (const auto& a : w) {
        if (a == L::elem(1, 2)) ++plain12;
        if (a.kind == Letter::Kind::Short) {
            ++shorts;
            CHECK(a == L::shortcut(1, 4, x));
        }
    }
    CHECK(plain12 == 3);
    CHECK(shorts == 1);
    CHECK(w.size() == 4);
}

TEST_CASE("property: edge_word evaluates to its element") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 80; ++t) {
        ParabolicShape P(5, static_cast<uint32_t>((rng() % 16) << 1)), Q(5, static_cast<uint32_t>((rng() % 16) << 1));
        auto R = P.intersect(Q);
        GroupElement g = GroupElement::identity(5);
        for (auto [i, j] : R.chi_N())
            if (rng() % 2) g = multiply(g, GroupElement::elementary(5, i, j, Int(static_cast<long long>(rng() % 100000)) - Int(50000)));
        auto Mp = R.chi_M();
        for (int k = 0; k < 3 && !Mp.empty(); ++k) {
            auto [i, j] = Mp[rng() % Mp.size()];
            g = multiply(g, GroupElement::elementary(5, i, j, rng() % 2 ? 1 : -1));
        }
        Word w = edge_word(g, P, Q);
        CHECK(evaluate(w, 5) == g);
    }
}
