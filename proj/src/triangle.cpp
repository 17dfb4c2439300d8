#include "slz/triangle.hpp"

#include <stdexcept>

#include "slz/shortcut.hpp"

namespace slz {

namespace {

bool is_m_letter(const ParabolicShape& P, const Letter& a) {
    return a.kind == Letter::Kind::Diag || (a.kind == Letter::Kind::Elem && P.in_M(a.i, a.j));
}

bool is_n_letter(const ParabolicShape& P, const Letter& a) {
    return a.kind != Letter::Kind::Diag && P.in_N(a.i, a.j);
}

// Deletes adjacent inverse pairs at cost 0.
void free_cancel(Rewriter& rw) {
    size_t i = 0;
    while (i + 1 < rw.word().size()) {
        if (are_inverse(rw.word()[i], rw.word()[i + 1])) {
            rw.apply(Step::free_delete(i, 2));
            if (i > 0) --i;
        } else {
            ++i;
        }
    }
}

// Conjugates nu letters [lo, hi) by m (at position hi): T m -> m (m^-1 T m), right to left.
// Returns the new letter count of the conjugated segment, which now starts at lo + 1.
size_t pass_m_left(Rewriter& rw, size_t lo, size_t hi) {
    const Letter m = rw.word()[hi];
    const int n = rw.n();
    size_t produced = 0;
    for (size_t p = hi; p-- > lo;) {
        const Letter t = rw.word()[p];
        rw.apply(Step::free_insert(p, Word{m}));
        // word: ... m m^-1 T m ...
        if (m.kind == Letter::Kind::Diag) {
            rw.apply(Step::macro_move(p + 1, macro_diag(m.diag_signs(), t.i, t.j, t.x)));
            produced += 1;
        } else {
            MacroMove mv = macro_rebase(Word{m.inverse()}, t.i, t.j, t.x);
            produced += mv.rhs(n).size();
            rw.apply(Step::macro_move(p + 1, std::move(mv)));
        }
    }
    return produced;
}

}  // namespace

Certificate fill_triangle(const Word& boundary, const ParabolicShape& P, const CostModel& cm, const MWordOptions& mopt) {
    const int n = P.n();
    for (const auto& a : boundary)
        if (!is_m_letter(P, a) && !is_n_letter(P, a))
            throw std::invalid_argument("fill_triangle: letter " + format_letter(a) + " outside " + P.str());
    if (!evaluate(boundary, n).is_identity()) throw std::invalid_argument("fill_triangle: boundary is not null");
    Rewriter rw(n, boundary, cm);
    free_cancel(rw);
    if (rw.word().empty()) return rw.certificate(boundary);
    if (is_plain(rw.word()) && static_cast<int>(rw.word().size()) <= cm.L0) {
        rw.apply(Step::atomic_fill(0, rw.word().size()));
        return rw.certificate(boundary);
    }

    size_t gl = 0;  // gamma = word[0, gl)
    NuNormalizer nz(rw, P, 0);
    while (nz.hi() < rw.word().size()) {
        const size_t h = nz.hi();
        const Letter a = rw.word()[h];
        if (is_n_letter(P, a)) {
            if (a.kind == Letter::Kind::Elem) {
                size_t q = h + 1;
                while (q < rw.word().size() && static_cast<int>(q - h) < cm.L0 && rw.word()[q] == a) ++q;
                rw.apply(Step::macro_move(h, macro_unipotent(a.i, a.j, Int(static_cast<long>((q - h) * a.sign)))));
            }
            nz.absorb_next();
            continue;
        }
        // M letter: move it to the front of nu, renormalize, then fold it into gamma.
        size_t produced = pass_m_left(rw, gl, h);
        nz.set_range(gl + 1, gl + 1);
        for (size_t t = 0; t < produced; ++t) nz.absorb_next();
        size_t nu_len = nz.hi() - (gl + 1);
        Word gm = slice(rw.word(), 0, gl + 1);
        GroupElement target = evaluate(gm, n);
        Word canon = m_word(target, P, mopt);
        if (canon != gm && static_cast<int>(gl + 1 + canon.size()) <= cm.L0) {
            rw.apply(Step::free_insert(gl + 1, invert_word(canon)));
            rw.apply(Step::atomic_fill(0, gl + 1 + canon.size()));
            gl = canon.size();
        } else {
            gl = gl + 1;
        }
        nz.set_range(gl, gl + nu_len);
    }
    if (nz.hi() != gl) throw std::logic_error("fill_triangle: unipotent remainder is not trivial");
    if (gl > 0) {
        if (static_cast<int>(gl) > cm.L0) throw std::runtime_error("fill_triangle: reductive remainder exceeds L0");
        rw.apply(Step::atomic_fill(0, gl));
    }
    if (!rw.word().empty()) throw std::logic_error("fill_triangle: word not emptied");
    return rw.certificate(boundary);
}

}  // namespace slz
