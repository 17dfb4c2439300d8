#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "slz/calibration.hpp"
#include "slz/presentation.hpp"
#include "slz/shortcut.hpp"

using namespace slz;
using L = Letter;

namespace {
GroupElement e(int n, int i, int j, const Int& x) {
    // Built entry by entry rather than through GroupElement::elementary.
    GroupElement g = GroupElement::identity(n);
    g.mut(i - 1, j - 1) = x;
    return g;
}
}  // namespace

TEST_CASE("shortcut_word examples") {
    const auto& sc = ShortcutScheme::default_scheme();
    CHECK(shortcut_word(1, 3, 0).empty());
    Word one = shortcut_word(1, 3, 1);
    CHECK(one.size() <= sc.c_short());
    CHECK(evaluate(one, 5) == e(5, 1, 3, 1));
    Int x = Int::pow10(18);
    Word w = shortcut_word(1, 3, x);
    CHECK(is_plain(w));
    CHECK(evaluate(w, 5) == e(5, 1, 3, x));
    CHECK(w.size() <= sc.c_short() * 61);
    MESSAGE("length of shortcut_word(1,3,10^18) = " << w.size());
    CHECK(shortcut_word(1, 3, x) == w);  // deterministic
}

TEST_CASE("shortcut of -x is the formal inverse of shortcut of x") {
    for (long x : {1L, 2L, 17L, 1000L, 123456789L})
        CHECK(shortcut_word(2, 5, -x) == invert_word(shortcut_word(2, 5, x)));
    Int big = Int::pow10(30) + Int(7);
    CHECK(shortcut_word(1, 3, -big) == invert_word(shortcut_word(1, 3, big)));
}

TEST_CASE("auxiliary index is the smallest admissible") {
    CHECK(ShortcutScheme::aux_index(1, 2) == 3);
    CHECK(ShortcutScheme::aux_index(2, 1) == 3);
    CHECK(ShortcutScheme::aux_index(1, 3) == 2);
    CHECK(ShortcutScheme::aux_index(3, 2) == 1);
    // The expansion only touches rows and columns {i, j, d}.
    for (const auto& a : shortcut_word(4, 5, Int(1000003))) {
        CHECK((a.i == 4 || a.i == 5 || a.i == 1));
        CHECK((a.j == 4 || a.j == 5 || a.j == 1));
    }
}

TEST_CASE("shortcut exactness for negative, huge and every index pair") {
    std::mt19937_64 rng(4);
    const Int huge("-340282366920938463463374607431768211457");
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j) {
            if (i == j) continue;
            Int x = Int(static_cast<long long>(rng() >> 4)) * Int(i % 2 ? -1 : 1);
            CHECK(evaluate(shortcut_word(i, j, x), 5) == e(5, i, j, x));
            CHECK(evaluate(shortcut_word(i, j, huge), 5) == e(5, i, j, huge));
        }
    for (int x = -40; x <= 40; ++x) CHECK(evaluate(shortcut_word(2, 1, x), 3) == e(3, 2, 1, x));
}

TEST_CASE("alternate seed matrix") {
    ShortcutScheme sc({Int(3), Int(1), Int(2), Int(1)}, 60.0);
    Int x = Int::pow2(100) + Int(12345);
    Word w = sc.shortcut_word(2, 4, x);
    CHECK(evaluate(w, 5) == e(5, 2, 4, x));
    CHECK(w.size() <= sc.length_bound(x));
    CHECK_THROWS(ShortcutScheme({Int(1), Int(1), Int(0), Int(1)}));  // trace 2
    CHECK_THROWS(ShortcutScheme({Int(2), Int(1), Int(1), Int(2)}));  // det 3
}

TEST_CASE("length law: doubling gap bounded and length logarithmic") {
    auto law = measure_shortcut_law(ShortcutScheme::default_scheme(), 5, 20, 18, 99);
    CHECK(law.all_exact);
    CHECK(law.samples == 20 * 18);
    CHECK(law.max_doubling_gap <= 64);
    CHECK(law.max_ratio <= ShortcutScheme::default_scheme().c_short());
}

TEST_CASE("nu_P examples") {
    auto P = ParabolicShape::from_composition({1, 1, 3});
    CHECK(nu_P(GroupElement::identity(5), P).empty());
    CHECK(nu_P(e(5, 1, 2, 7), P) == Word{L::shortcut(1, 2, 7)});

    auto Q = ParabolicShape::from_composition({2, 3});
    GroupElement u = GroupElement::identity(5);
    u.mut(0, 2) = 3;
    u.mut(0, 4) = -5;
    u.mut(1, 3) = 2;
    Word nu = nu_P(u, Q);
    CHECK(nu == Word{L::shortcut(1, 3, 3), L::shortcut(1, 5, -5), L::shortcut(2, 4, 2)});
    // Oracle: product of the shortcut matrices in the declared order.
    GroupElement prod = GroupElement::identity(5);
    for (const auto& a : nu) prod = multiply(prod, e(5, a.i, a.j, a.x));
    CHECK(prod == u);
    CHECK_THROWS_AS(nu_P(e(5, 3, 1, 1), Q), std::invalid_argument);
}

TEST_CASE("nu_P orders later blocks first") {
    auto P = ParabolicShape::from_composition({1, 1, 1, 2});
    GroupElement u = multiply(e(5, 1, 2, 4), e(5, 2, 3, 6));
    Word nu = nu_P(u, P);
    REQUIRE(nu.size() == 3);
    CHECK(nu[0] == L::shortcut(2, 3, 6));
    CHECK(evaluate(nu, 5) == u);
}

TEST_CASE("property: nu_P round-trip with entries up to 2^256") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) {
        uint32_t mask = (rng() % 15 + 1) << 1;
        ParabolicShape P(5, mask);
        GroupElement u = GroupElement::identity(5);
        for (auto [i, j] : P.chi_N()) {
            if (rng() % 3 == 0) continue;
            Int v = Int::pow2(rng() % 257) - Int(static_cast<long long>(rng() % 1000));
            u.mut(i - 1, j - 1) = rng() % 2 ? v : -v;
        }
        // Block-unipotent entries above the diagonal blocks compose; use a product to stay in N_P.
        u = multiply(u, u);
        Word nu = nu_P(u, P);
        CHECK(evaluate(nu, 5) == u);
        for (const auto& a : nu) CHECK(P.in_N(a.i, a.j));
    }
}

namespace {
void check_fragments(const MacroMove& m, int n = 5) {
    CHECK(m.check(n).empty());
    CHECK(evaluate(m.lhs(n), n) == evaluate(m.rhs(n), n));
}
}  // namespace

TEST_CASE("macro examples") {
    Int x("1180591620717411303424");
    MacroMove add = macro_add(1, 2, x, -x);
    CHECK(add.lhs(5) == Word{L::shortcut(1, 2, x), L::shortcut(1, 2, -x)});
    CHECK(add.rhs(5).empty());
    check_fragments(add);

    MacroMove mul = macro_mul(1, 2, 3, 2, 3);
    CHECK(mul.rhs(5) == Word{L::shortcut(1, 3, 6)});
    // Oracle: commutator of matrices built directly.
    GroupElement a = e(5, 1, 2, 2), b = e(5, 2, 3, 3);
    CHECK(multiply(multiply(a, b), multiply(invert(a), invert(b))) == e(5, 1, 3, 6));
    check_fragments(mul);

    MacroMove dg = macro_diag({-1, 1, -1, 1, 1}, 1, 3, 9);
    CHECK(dg.rhs(5) == Word{L::shortcut(1, 3, 9)});
    check_fragments(dg);
    MacroMove dg2 = macro_diag({-1, -1, 1, 1, 1}, 1, 3, 9);
    CHECK(dg2.rhs(5) == Word{L::shortcut(1, 3, -9)});
    check_fragments(dg2);

    CHECK_THROWS(macro_commute(1, 2, 2, 3, 1, 1));
    CHECK_THROWS(macro_mul(1, 2, 1, 1, 1));
}

TEST_CASE("property: every schema has equal fragments") {
    std::mt19937_64 rng(12);
    auto big = [&] {
        Int v = Int::pow2(rng() % 90) + Int(static_cast<long long>(rng() % 17));
        return rng() % 2 ? v : -v;
    };
    auto pick = [&](std::vector<int> avoid) {
        for (;;) {
            int a = 1 + rng() % 5;
            if (std::find(avoid.begin(), avoid.end(), a) == avoid.end()) return a;
        }
    };
    for (int t = 0; t < 100; ++t) {
        int i = pick({}), j = pick({i}), k = pick({i, j}), l = pick({k, i});
        check_fragments(macro_add(i, j, big(), big()));
        for (auto f : {MacroMove::MulForm::Comm, MacroMove::MulForm::Pass, MacroMove::MulForm::PassBack})
            check_fragments(macro_mul(i, j, k, big(), big(), f));
        int kk = pick({j}), ll = pick({kk, i});
        check_fragments(macro_commute(i, j, kk, ll, big(), big()));
        int sk = pick({}), sl = pick({sk});
        check_fragments(macro_swap(i, j, sk, sl, big()));
        std::vector<int> b(5, 1);
        b[rng() % 5] = -1;
        int second = rng() % 5;
        b[second] = b[second] * -1;
        if (std::count(b.begin(), b.end(), -1) % 2 == 0) check_fragments(macro_diag(b, i, j, big()));
        long long ex = static_cast<long long>(rng() % 40) - 20;
        check_fragments(macro_unipotent(i, j, ex ? ex : 1));
    }
}

TEST_CASE("rebase conjugation by a bounded block word") {
    // gamma in M_P for P = U(2,3) conjugating e_14 into a commuting product.
    Word gamma{L::elem(4, 5), L::elem(3, 4, -1)};
    MacroMove m = macro_rebase(gamma, 1, 4, Int::pow2(70));
    check_fragments(m);
    CHECK(is_plain(m.gamma));
}
