#include <doctest.h>

#include <random>

#include "slz/group_element.hpp"
#include "slz/word.hpp"
#include "test_util.hpp"

using namespace slz;
using slz::testing::from_ll;
using slz::testing::naive_mul;
using slz::testing::to_ll;

TEST_CASE("identity products") {
    auto I = GroupElement::identity(4);
    CHECK(multiply(I, I) == I);
    CHECK(invert(I) == I);
    CHECK(I.is_identity());
}

TEST_CASE("e12(1) e23(1) against schoolbook product") {
    auto a = GroupElement::elementary(3, 1, 2, 1), b = GroupElement::elementary(3, 2, 3, 1);
    auto p = multiply(a, b);
    CHECK(to_ll(p) == naive_mul(to_ll(a), to_ll(b)));
    CHECK(p(0, 1) == Int(1));
    CHECK(p(1, 2) == Int(1));
    CHECK(p(0, 2) == Int(1));
}

TEST_CASE("unipotent addition") {
    CHECK(multiply(GroupElement::elementary(5, 1, 2, 7), GroupElement::elementary(5, 1, 2, -9)) ==
          GroupElement::elementary(5, 1, 2, -2));
    CHECK(invert(GroupElement::elementary(5, 1, 3, 5)) == GroupElement::elementary(5, 1, 3, -5));
}

TEST_CASE("inverse of embedded s-matrix") {
    std::vector<std::vector<long long>> s(5, std::vector<long long>(5, 0)), t;
    for (int i = 0; i < 5; ++i) s[i][i] = 1;
    s[0][0] = s[1][1] = 0;
    s[0][1] = 1;
    s[1][0] = -1;
    t = s;
    // 2x2 adjugate of [[a,b],[c,d]] is [[d,-b],[-c,a]].
    t[0][1] = -1;
    t[1][0] = 1;
    CHECK(invert(from_ll(s)) == from_ll(t));
}

TEST_CASE("construction rejects determinant other than 1") {
    CHECK_THROWS_AS(GroupElement({{Int(2), Int(0)}, {Int(0), Int(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(GroupElement({{Int(1), Int(0)}}), std::invalid_argument);
    CHECK_THROWS(multiply(GroupElement::identity(3), GroupElement::identity(4)));
}

TEST_CASE("norms") {
    CHECK(norm_inf(GroupElement::elementary(5, 1, 3, 5)) == Int(5));
    CHECK(norm2sq(GroupElement::identity(5)) == Int(5));
    CHECK(norm2sq(GroupElement::elementary(5, 1, 2, 3)) == Int(14));
}

TEST_CASE("big integer entries stay exact") {
    Int big = Int::pow2(200);
    auto g = GroupElement::elementary(3, 1, 2, big);
    auto h = multiply(g, g);
    CHECK(h(0, 1) == big + big);
    CHECK(multiply(h, invert(h)).is_identity());
    CHECK(norm2sq(g) == big * big + Int(3));
}

TEST_CASE("int64 overflow falls back to mpz") {
    Int a(INT64_MAX);
    Int b = a + Int(1);
    CHECK_FALSE(b.is_small());
    CHECK(b.str() == "9223372036854775808");
    CHECK(b - Int(1) == a);
    CHECK((b - Int(1)).is_small());
    Int c = Int(INT64_MIN);
    CHECK((-c).str() == "9223372036854775808");
    CHECK((c * Int(-1)).str() == "9223372036854775808");
    CHECK(Int::floor_div(Int(-7), Int(2)) == Int(-4));
    CHECK(Int("-123456789012345678901234567890").str() == "-123456789012345678901234567890");
}

TEST_CASE("hermite_span examples") {
    auto s = hermite_span({{Int(0), Int(0), Int(1)}, {Int(0), Int(1), Int(0)}});
    CHECK(s.rank() == 2);
    CHECK(s.basis == std::vector<IntVec>{{Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}});
    auto t = hermite_span({{Int(2), Int(0)}, {Int(3), Int(0)}});
    CHECK(t.rank() == 1);
    CHECK(t.basis == std::vector<IntVec>{{Int(1), Int(0)}});
    CHECK(hermite_span({}, 4).rank() == 0);
}

TEST_CASE("hermite_span is canonical for the same lattice") {
    // {(4,6),(0,2)} and {(4,0),(0,2)} span the same lattice.
    auto a = hermite_span({{Int(4), Int(6)}, {Int(0), Int(2)}});
    auto b = hermite_span({{Int(4), Int(0)}, {Int(0), Int(2)}, {Int(8), Int(2)}});
    CHECK(a == b);
}

namespace {
GroupElement random_element(int n, size_t len, std::mt19937_64& rng) {
    return evaluate(slz::testing::random_plain_word(n, len, rng), n);
}
}  // namespace

TEST_CASE("property: submultiplicative norm, inverse norm bound, inverse") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        int n = 3 + t % 3;
        auto g = random_element(n, 1 + rng() % 20, rng), h = random_element(n, 1 + rng() % 20, rng);
        CHECK(norm2sq(multiply(g, h)) <= norm2sq(g) * norm2sq(h));
        Int lhs(1);
        for (int k = 0; k < n; ++k) lhs *= norm2sq(invert(g));
        CHECK(lhs >= norm2sq(g));
        CHECK(multiply(g, invert(g)).is_identity());
        CHECK(determinant(n, g.entries()) == Int(1));
        if (norm_inf(g) < Int(1000) && norm_inf(h) < Int(1000))
            CHECK(to_ll(multiply(g, h)) == naive_mul(to_ll(g), to_ll(h)));
    }
}

TEST_CASE("property: hermite_span idempotent") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> e(-9, 9);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + t % 4, k = t % 5;
        std::vector<IntVec> vs(k, IntVec(n));
        for (auto& v : vs)
            for (auto& x : v) x = e(rng);
        auto s = hermite_span(vs, n);
        CHECK(hermite_span(s.basis, n) == s);
        for (size_t r = 1; r < s.basis.size(); ++r) {
            auto lead = [&](const IntVec& v) {
                int c = 0;
                while (c < n && v[c].is_zero()) ++c;
                return c;
            };
            CHECK(lead(s.basis[r - 1]) < lead(s.basis[r]));
            CHECK(s.basis[r - 1][lead(s.basis[r - 1])] > Int(0));
        }
    }
}
