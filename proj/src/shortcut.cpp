#include "slz/shortcut.hpp"

#include <cmath>
#include <stdexcept>

namespace slz {

namespace {

using Vec2 = std::array<Int, 2>;
using Local = std::vector<std::pair<int, int>>;

// Integer truncated quotient.
Int tdiv(const Int& a, const Int& b) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

void push_power(Local& w, int a, const Int& k) {
    int s = k.sign() < 0 ? -1 : 1;
    Int m = abs(k);
    if (!m.is_small() || m.small() > 1000000) throw std::invalid_argument("seed factorization too long");
    for (int64_t t = 0; t < m.small(); ++t) w.emplace_back(a, s);
}

Local free_reduce_local(const Local& w) {
    Local out;
    for (auto l : w) {
        if (!out.empty() && out.back().first == l.first && out.back().second == -l.second) out.pop_back();
        else out.push_back(l);
    }
    return out;
}

// Word over local e_12 (a = 0) and e_21 (a = 1) evaluating to m in SL(2,Z).
Local factor_sl2(std::array<Int, 4> b) {
    std::vector<std::pair<int, Int>> ops;
    auto col0_add = [&](const Int& k) {  // right multiply by e_21(k)
        b[0] += k * b[1];
        b[2] += k * b[3];
        ops.emplace_back(1, k);
    };
    auto col1_add = [&](const Int& k) {  // right multiply by e_12(k)
        b[1] += k * b[0];
        b[3] += k * b[2];
        ops.emplace_back(0, k);
    };
    while (!b[1].is_zero()) {
        if (b[0].is_zero()) col0_add(Int(1));
        else if (abs(b[0]) > abs(b[1])) col0_add(-tdiv(b[0], b[1]));
        else col1_add(-tdiv(b[1], b[0]));
    }
    Int a = b[0];
    if (!b[2].is_zero()) col0_add(-(b[2] * a));
    Local w;
    if (a.sign() < 0) {
        // -I = s^2 with s = e_21^-1 e_12 e_21^-1.
        for (int t = 0; t < 2; ++t) {
            w.emplace_back(1, -1);
            w.emplace_back(0, 1);
            w.emplace_back(1, -1);
        }
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) push_power(w, it->first, -it->second);
    return free_reduce_local(w);
}

long double to_ld(const mpf_class& f) {
    long exp = 0;
    double m = mpf_get_d_2exp(&exp, f.get_mpf_t());
    return std::ldexp(static_cast<long double>(m), static_cast<int>(exp));
}

// Eigen-data of the seed at a chosen working precision.
struct Eigen2 {
    mpf_class ls, lt, lambda;
    Eigen2(const std::array<Int, 4>& a, mp_bitcnt_t prec) : ls(0, prec), lt(0, prec), lambda(0, prec) {
        mpf_class t(a[0].to_mpz() + a[3].to_mpz(), prec);
        mpf_class disc(t * t - 4, prec);
        mpf_class root(sqrt(disc), prec);
        lambda = (t + root) / 2;
        mpf_class mu((t - root) / 2, prec);
        mpf_class p(a[0].to_mpz(), prec), r(a[2].to_mpz(), prec);
        ls = (mu - p) / r;
        lt = (lambda - p) / r;
    }
};

}  // namespace

ShortcutScheme::ShortcutScheme() : ShortcutScheme({Int(2), Int(1), Int(1), Int(1)}, 48.0) {}

ShortcutScheme::ShortcutScheme(const std::array<Int, 4>& seed, double c_short) : a_(seed), c_short_(c_short) {
    if (a_[0] * a_[3] - a_[1] * a_[2] != Int(1)) throw std::invalid_argument("seed matrix must have determinant 1");
    Int tr = a_[0] + a_[3];
    if (!(abs(tr) > Int(2))) throw std::invalid_argument("seed matrix must be hyperbolic (|trace| > 2)");
    if (tr.sign() < 0) throw std::invalid_argument("seed matrix must have positive trace");
    if (!tr.is_small() || tr.small() > 1000) throw std::invalid_argument("seed trace too large");
    long double t = static_cast<long double>(tr.small());
    lambda_ = (t + std::sqrt(t * t - 4)) / 2;
    digit_bound_ = static_cast<int>(std::ceil(lambda_));
    Eigen2 e(a_, 128);
    ls_ = to_ld(e.ls);
    lt_ = to_ld(e.lt);
    seed_word_ = factor_sl2(a_);
    std::array<Int, 4> inv{a_[3], -a_[1], -a_[2], a_[0]};
    seed_inv_word_ = factor_sl2(inv);
}

const ShortcutScheme& ShortcutScheme::default_scheme() {
    static const ShortcutScheme s;
    return s;
}

int ShortcutScheme::aux_index(int i, int j) {
    for (int d = 1;; ++d)
        if (d != i && d != j) return d;
}

double ShortcutScheme::length_bound(const Int& x) const {
    return c_short_ * (1.0 + std::log2(abs(x).to_double() + 1.0));
}

Word ShortcutScheme::shortcut_word(int i, int j, const Int& x) const {
    if (i < 1 || j < 1 || i == j) throw std::invalid_argument("shortcut_word: bad index pair");
    if (x.is_zero()) return {};
    if (abs(x) <= Int(small_threshold())) {
        Word w;
        int s = x.sign();
        for (int64_t t = 0; t < std::abs(x.small()); ++t) w.push_back(Letter::elem(i, j, s));
        return w;
    }
    if (x.sign() < 0) return invert_word(expand_positive(i, j, -x));
    return expand_positive(i, j, x);
}

Word ShortcutScheme::expand_positive(int i, int j, const Int& x) const {
    const int d = aux_index(i, j);
    const int D = digit_bound_;
    const mp_bitcnt_t prec = 128 + 2 * x.bit_length();
    Eigen2 e(a_, prec);

    auto sigma = [&](const Vec2& v) {
        mpf_class a(v[0].to_mpz(), prec), b(v[1].to_mpz(), prec);
        return to_ld(mpf_class(a + e.ls * b, prec));
    };
    auto tau = [&](const Vec2& v) {
        mpf_class a(v[0].to_mpz(), prec), b(v[1].to_mpz(), prec);
        return to_ld(mpf_class(a + e.lt * b, prec));
    };
    auto is_digit = [&](const Vec2& v) {
        return abs(v[0]) <= Int(D) && abs(v[1]) <= Int(D);
    };

    // Split (x, 0) = p + q with p on the expanding eigenline (rounded) and q nearly contracting.
    Vec2 p, q;
    {
        mpf_class rq(a_[1].to_mpz(), prec);
        mpf_class rl(e.lambda - mpf_class(a_[0].to_mpz(), prec), prec);
        // tau(e_lambda) with e_lambda = (rq, rl).
        mpf_class te(rq + e.lt * rl, prec);
        mpf_class alpha(mpf_class(x.to_mpz(), prec) / te, prec);
        auto round_mpf = [&](const mpf_class& f) {
            mpf_class g(f + 0.5, prec);
            mpf_class h(0, prec);
            mpf_floor(h.get_mpf_t(), g.get_mpf_t());
            return Int(mpz_class(h));
        };
        p = {round_mpf(alpha * rq), round_mpf(alpha * rl)};
        q = {x - p[0], -p[1]};
    }

    const Int &a00 = a_[0], &a01 = a_[1], &a10 = a_[2], &a11 = a_[3];
    auto apply_A = [&](const Vec2& v) { return Vec2{a00 * v[0] + a01 * v[1], a10 * v[0] + a11 * v[1]}; };
    auto apply_Ainv = [&](const Vec2& v) { return Vec2{a11 * v[0] - a01 * v[1], a00 * v[1] - a10 * v[0]}; };

    const size_t guard = 4 * x.bit_length() + 100;
    // expanding = true: digits keep sigma bounded while tau contracts under A^-1.
    auto numerate = [&](Vec2 v, bool expanding) {
        std::vector<std::array<int, 2>> digits;
        while (true) {
            if (digits.size() > guard) throw std::runtime_error("shortcut numeration did not terminate");
            if (is_digit(v)) {
                digits.push_back({static_cast<int>(v[0].small()), static_cast<int>(v[1].small())});
                return digits;
            }
            long double sv = sigma(v), tv = tau(v);
            // Among digits whose residual on the bounded coordinate stays within 1/2, take the
            // cheapest; otherwise the nearest. Ties: residual, then the other residual, then lex.
            std::array<int, 2> best{0, 0};
            long double best_k1 = 0, best_k2 = 0;
            int best_cost = 0;
            bool have = false, best_ok = false;
            for (int c1 = -D; c1 <= D; ++c1)
                for (int c2 = -D; c2 <= D; ++c2) {
                    long double ds = std::fabs(sv - (c1 + ls_ * c2));
                    long double dt = std::fabs(tv - (c1 + lt_ * c2));
                    long double k1 = expanding ? ds : dt, k2 = expanding ? dt : ds;
                    bool ok = k1 <= 0.5L + 1e-12L;
                    int cost = std::abs(c1) + std::abs(c2);
                    bool better;
                    if (!have) better = true;
                    else if (ok != best_ok) better = ok;
                    else if (ok && cost != best_cost) better = cost < best_cost;
                    else if (std::fabs(k1 - best_k1) > 1e-12L) better = k1 < best_k1;
                    else better = k2 < best_k2 - 1e-12L;
                    if (better) {
                        have = true;
                        best_ok = ok;
                        best_cost = cost;
                        best_k1 = k1;
                        best_k2 = k2;
                        best = {c1, c2};
                    }
                }
            digits.push_back(best);
            Vec2 r{v[0] - Int(best[0]), v[1] - Int(best[1])};
            v = expanding ? apply_Ainv(r) : apply_A(r);
        }
    };

    auto local_letter = [&](std::pair<int, int> l) {
        return l.first == 0 ? Letter::elem(i, d, l.second) : Letter::elem(d, i, l.second);
    };
    auto emit_u = [&](Word& w, const std::array<int, 2>& c) {
        for (int t = 0; t < std::abs(c[0]); ++t) w.push_back(Letter::elem(i, j, c[0] > 0 ? 1 : -1));
        for (int t = 0; t < std::abs(c[1]); ++t) w.push_back(Letter::elem(d, j, c[1] > 0 ? 1 : -1));
    };
    auto emit_seed = [&](Word& w, bool inverse, size_t times) {
        const Local& s = inverse ? seed_inv_word_ : seed_word_;
        for (size_t t = 0; t < times; ++t)
            for (auto l : s) w.push_back(local_letter(l));
    };

    Word w;
    auto dp = numerate(p, true);
    for (size_t k = 0; k < dp.size(); ++k) {
        if (k) emit_seed(w, false, 1);
        emit_u(w, dp[k]);
    }
    emit_seed(w, true, dp.size() - 1);
    auto dq = numerate(q, false);
    for (size_t k = 0; k < dq.size(); ++k) {
        if (k) emit_seed(w, true, 1);
        emit_u(w, dq[k]);
    }
    emit_seed(w, false, dq.size() - 1);
    return free_reduce(w);
}

Word ShortcutScheme::expand(const Word& w) const {
    Word out;
    for (const auto& a : w) {
        if (a.is_plain()) {
            out.push_back(a);
        } else {
            Word s = shortcut_word(a.i, a.j, a.x);
            out.insert(out.end(), s.begin(), s.end());
        }
    }
    return out;
}

Word shortcut_word(int i, int j, const Int& x) { return ShortcutScheme::default_scheme().shortcut_word(i, j, x); }

Word expand(const Word& w) { return ShortcutScheme::default_scheme().expand(w); }

Word nu_P(const GroupElement& u, const ParabolicShape& P) {
    if (u.n() != P.n()) throw std::invalid_argument("nu_P: dimension mismatch");
    if (!P.contains_N(u)) throw std::invalid_argument("nu_P: element not in N_P(Z)");
    Word w;
    for (int q = P.num_blocks() - 1; q >= 0; --q)
        for (auto [i, j] : P.chi_N_block(q)) {
            const Int& v = u(i - 1, j - 1);
            if (!v.is_zero()) w.push_back(Letter::shortcut(i, j, v));
        }
    return w;
}

MacroMove macro_add(int i, int j, const Int& x, const Int& y) {
    if (i == j) throw std::invalid_argument("macro_add: i == j");
    MacroMove m;
    m.schema = MacroMove::Schema::Add;
    m.i = i; m.j = j; m.x = x; m.y = y;
    return m;
}

MacroMove macro_mul(int i, int j, int k, const Int& x, const Int& y, MacroMove::MulForm form) {
    if (i == j || j == k || i == k) throw std::invalid_argument("macro_mul: indices not distinct");
    MacroMove m;
    m.schema = MacroMove::Schema::Mul;
    m.i = i; m.j = j; m.k = k; m.x = x; m.y = y; m.form = form;
    return m;
}

MacroMove macro_commute(int i, int j, int k, int l, const Int& x, const Int& y) {
    if (i == j || k == l || i == l || j == k) throw std::invalid_argument("macro_commute: requires i != l, j != k");
    MacroMove m;
    m.schema = MacroMove::Schema::Commute;
    m.i = i; m.j = j; m.k = k; m.l = l; m.x = x; m.y = y;
    return m;
}

MacroMove macro_swap(int i, int j, int k, int l, const Int& x) {
    if (i == j || k == l) throw std::invalid_argument("macro_swap: bad index pair");
    MacroMove m;
    m.schema = MacroMove::Schema::SwapConj;
    m.i = i; m.j = j; m.k = k; m.l = l; m.x = x;
    return m;
}

MacroMove macro_diag(const std::vector<int>& b, int i, int j, const Int& x) {
    (void)Letter::diag(b);
    if (i == j || i < 1 || j < 1 || i > static_cast<int>(b.size()) || j > static_cast<int>(b.size()))
        throw std::invalid_argument("macro_diag: bad index pair");
    MacroMove m;
    m.schema = MacroMove::Schema::DiagConj;
    m.signs = b;
    m.i = i; m.j = j; m.x = x;
    return m;
}

MacroMove macro_unipotent(int i, int j, const Int& k) {
    if (i == j || k.is_zero()) throw std::invalid_argument("macro_unipotent: bad parameters");
    MacroMove m;
    m.schema = MacroMove::Schema::UnipotentRewrite;
    m.i = i; m.j = j; m.x = k;
    return m;
}

MacroMove macro_rebase(const Word& gamma, int i, int j, const Int& x) {
    if (i == j || !is_plain(gamma)) throw std::invalid_argument("macro_rebase: bad parameters");
    MacroMove m;
    m.schema = MacroMove::Schema::ConjRebase;
    m.gamma = gamma;
    m.i = i; m.j = j; m.x = x;
    return m;
}

}  // namespace slz
