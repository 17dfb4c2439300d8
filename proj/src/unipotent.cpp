#include "slz/unipotent.hpp"

#include <stdexcept>

#include "slz/shortcut.hpp"

namespace slz {

void Rewriter::apply(Step s) {
    apply_unchecked(w_, s, n_);
    cost_ += step_cost(s, cm_);
    steps_.push_back(std::move(s));
}

void Rewriter::splice(const std::vector<Step>& steps, size_t offset) {
    for (Step s : steps) {
        s.pos += offset;
        apply(std::move(s));
    }
}

Certificate Rewriter::certificate(const Word& initial) const {
    Certificate c;
    c.n = n_;
    c.initial = initial;
    c.steps = steps_;
    c.cost_model = cm_;
    c.total_cost = cost_;
    return c;
}

NuKey nu_key(const ParabolicShape& P, int i, int j) { return {-P.block_of(i), i, j}; }

namespace {

NuKey key_of(const ParabolicShape& P, const Letter& a) { return nu_key(P, a.i, a.j); }

bool same_pair(const Letter& a, const Letter& b) { return a.i == b.i && a.j == b.j; }

void require_short(const ParabolicShape& P, const Letter& a) {
    if (a.kind != Letter::Kind::Short || !P.in_N(a.i, a.j))
        throw std::invalid_argument("expected a shortcut over chi(N_P), got " + format_letter(a));
}

}  // namespace

void NuNormalizer::bubble_right(size_t p) {
    const Word& w = rw_.word();
    while (p + 1 < hi_) {
        const Letter &s = w[p], &u = w[p + 1];
        if (same_pair(s, u)) {
            bool vanish = (s.x + u.x).is_zero();
            rw_.apply(Step::macro_move(p, macro_add(s.i, s.j, s.x, u.x)));
            hi_ -= vanish ? 2 : 1;
            return;
        }
        if (!(key_of(P_, u) < key_of(P_, s))) return;
        rw_.apply(Step::macro_move(p, macro_commute(s.i, s.j, u.i, u.j, s.x, u.x)));
        ++p;
    }
}

void NuNormalizer::absorb_next() {
    const Word& w = rw_.word();
    if (hi_ >= w.size()) throw std::logic_error("absorb_next: nothing to absorb");
    require_short(P_, w[hi_]);
    size_t pos = hi_;
    ++hi_;  // [lo, hi) now holds the normal form followed by the new letter
    while (pos > lo_) {
        const Letter &t = w[pos - 1], &l = w[pos];
        if (same_pair(t, l)) {
            bool vanish = (t.x + l.x).is_zero();
            rw_.apply(Step::macro_move(pos - 1, macro_add(t.i, t.j, t.x, l.x)));
            hi_ -= vanish ? 2 : 1;
            return;
        }
        NuKey kt = key_of(P_, t), kl = key_of(P_, l);
        if (kt < kl) return;
        if (t.j != l.i && t.i != l.j) {
            rw_.apply(Step::macro_move(pos - 1, macro_commute(t.i, t.j, l.i, l.j, t.x, l.x)));
            --pos;
            continue;
        }
        // t = S_ca, l = S_ab: S_ca S_ab -> S_ab S_cb S_ca; the new S_cb shares row c with t.
        if (t.j != l.i) throw std::logic_error("absorb_next: unexpected non-commuting pair");
        rw_.apply(Step::macro_move(pos - 1, macro_mul(t.i, t.j, l.j, t.x, l.x, MacroMove::MulForm::Pass)));
        ++hi_;
        bubble_right(pos);
        --pos;
    }
}

void shortcut_plain_runs(Rewriter& rw, const ParabolicShape& P, size_t lo, size_t& hi) {
    const int cap = std::max(1, rw.cost_model().L0);
    size_t p = lo;
    while (p < hi) {
        const Letter& a = rw.word()[p];
        if (a.kind != Letter::Kind::Elem || !P.in_N(a.i, a.j)) {
            ++p;
            continue;
        }
        size_t q = p + 1;
        while (q < hi && q - p < static_cast<size_t>(cap) && rw.word()[q] == a) ++q;
        int k = static_cast<int>(q - p) * a.sign;
        rw.apply(Step::macro_move(p, macro_unipotent(a.i, a.j, Int(k))));
        hi -= (q - p) - 1;
        ++p;
    }
}

Certificate fill_unipotent(const Word& w, const ParabolicShape& P, const CostModel& cm) {
    const int n = P.n();
    for (const auto& a : w) {
        bool ok = (a.kind == Letter::Kind::Short || a.kind == Letter::Kind::Elem) && a.i >= 1 && a.i <= n &&
                  a.j >= 1 && a.j <= n && P.in_N(a.i, a.j);
        if (!ok) throw std::invalid_argument("fill_unipotent: letter outside chi(N_P): " + format_letter(a));
    }
    if (!evaluate(w, n).is_identity()) throw std::invalid_argument("fill_unipotent: word is not null");
    Rewriter rw(n, w, cm);
    size_t hi = w.size();
    shortcut_plain_runs(rw, P, 0, hi);
    NuNormalizer nz(rw, P, 0);
    while (nz.hi() < rw.word().size()) nz.absorb_next();
    if (!rw.word().empty()) throw std::logic_error("fill_unipotent: normal form of I is not empty");
    return rw.certificate(w);
}

}  // namespace slz
