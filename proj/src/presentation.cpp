#include "slz/presentation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace slz {

namespace {

bool idx_ok(int a, int n) { return a >= 1 && a <= n; }

Word rotate(const Word& w, int r) {
    Word out;
    out.reserve(w.size());
    for (size_t t = 0; t < w.size(); ++t) out.push_back(w[(t + r) % w.size()]);
    return out;
}

void replace(Word& w, size_t pos, size_t len, const Word& by) {
    if (len == by.size()) {
        std::copy(by.begin(), by.end(), w.begin() + pos);
        return;
    }
    w.erase(w.begin() + pos, w.begin() + pos + len);
    w.insert(w.begin() + pos, by.begin(), by.end());
}

void replace(GapWord& w, size_t pos, size_t len, const Word& by) { w.replace(pos, len, by); }

template <class W>
bool matches(const W& w, size_t pos, const Word& frag) {
    if (pos + frag.size() > w.size()) return false;
    for (size_t t = 0; t < frag.size(); ++t)
        if (!(w[pos + t] == frag[t])) return false;
    return true;
}

Word relator_pieces(const Step& s, int n, Word& u) {
    Word r = s.relator.word(n);
    r = rotate(r, s.rotation);
    if (s.inverted) r = invert_word(r);
    u.assign(r.begin(), r.begin() + s.split);
    return invert_word(Word(r.begin() + s.split, r.end()));
}

}  // namespace

Word s_word(int i, int j) { return {Letter::elem(j, i, -1), Letter::elem(i, j, 1), Letter::elem(j, i, -1)}; }

Word Relator::word(int n) const {
    switch (kind) {
    case Kind::Commute:
        return {Letter::elem(i, j), Letter::elem(k, l), Letter::elem(i, j, -1), Letter::elem(k, l, -1)};
    case Kind::Multiply:
        return {Letter::elem(i, j), Letter::elem(j, k), Letter::elem(i, j, -1), Letter::elem(j, k, -1),
                Letter::elem(i, k, -1)};
    case Kind::Torsion: {
        Word w;
        for (int t = 0; t < 4; ++t) {
            w.push_back(Letter::elem(i, j));
            w.push_back(Letter::elem(j, i, -1));
            w.push_back(Letter::elem(i, j));
        }
        return w;
    }
    case Kind::DiagExpr: {
        if (static_cast<int>(signs.size()) != n) throw std::invalid_argument("DiagExpr: dimension mismatch");
        Word prod;
        int first = -1;
        for (int t = 0; t < n; ++t) {
            if (signs[t] > 0) continue;
            if (first < 0) {
                first = t + 1;
                continue;
            }
            Word s = s_word(first, t + 1);
            prod.insert(prod.end(), s.begin(), s.end());
            prod.insert(prod.end(), s.begin(), s.end());
            first = -1;
        }
        Word w{Letter::diag(signs)};
        Word inv = invert_word(prod);
        w.insert(w.end(), inv.begin(), inv.end());
        return w;
    }
    }
    return {};
}

std::string Relator::check(int n) const {
    switch (kind) {
    case Kind::Commute:
        if (!idx_ok(i, n) || !idx_ok(j, n) || !idx_ok(k, n) || !idx_ok(l, n)) return "index out of range";
        if (i == j || k == l || i == l || j == k || (i == k && j == l)) return "inadmissible commutator";
        return "";
    case Kind::Multiply:
        if (!idx_ok(i, n) || !idx_ok(j, n) || !idx_ok(k, n)) return "index out of range";
        if (i == j || j == k || i == k) return "indices not distinct";
        return "";
    case Kind::Torsion:
        if (!idx_ok(i, n) || !idx_ok(j, n) || i == j) return "bad index pair";
        return "";
    case Kind::DiagExpr: {
        if (static_cast<int>(signs.size()) != n) return "dimension mismatch";
        int neg = 0;
        for (int s : signs) {
            if (s != 1 && s != -1) return "entry not +-1";
            neg += s < 0;
        }
        if (neg % 2 || neg == 0) return "needs a positive even number of -1 entries";
        return "";
    }
    }
    return "unknown relator";
}

std::string Relator::str() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Commute: os << "C(" << i << "," << j << "," << k << "," << l << ")"; break;
    case Kind::Multiply: os << "M(" << i << "," << j << "," << k << ")"; break;
    case Kind::Torsion: os << "T(" << i << "," << j << ")"; break;
    case Kind::DiagExpr:
        os << "D(";
        for (size_t t = 0; t < signs.size(); ++t) os << (t ? "," : "") << signs[t];
        os << ")";
        break;
    }
    return os.str();
}

Relator Relator::parse(const std::string& s) {
    if (s.size() < 4 || s[1] != '(' || s.back() != ')') throw std::invalid_argument("bad relator: " + s);
    std::vector<int> v;
    std::stringstream ss(s.substr(2, s.size() - 3));
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
    Relator r;
    auto need = [&](size_t c) {
        if (v.size() != c) throw std::invalid_argument("bad relator arity: " + s);
    };
    switch (s[0]) {
    case 'C': need(4); r.kind = Kind::Commute; r.i = v[0]; r.j = v[1]; r.k = v[2]; r.l = v[3]; break;
    case 'M': need(3); r.kind = Kind::Multiply; r.i = v[0]; r.j = v[1]; r.k = v[2]; break;
    case 'T': need(2); r.kind = Kind::Torsion; r.i = v[0]; r.j = v[1]; break;
    case 'D': r.kind = Kind::DiagExpr; r.signs = v; break;
    default: throw std::invalid_argument("bad relator: " + s);
    }
    return r;
}

std::vector<Relator> relators(int n) {
    if (n < 3) throw std::invalid_argument("relators: n must be at least 3");
    std::vector<Relator> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    Relator r;
                    r.kind = Relator::Kind::Commute;
                    r.i = i; r.j = j; r.k = k; r.l = l;
                    if (r.check(n).empty()) out.push_back(r);
                }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (i == j || j == k || i == k) continue;
                Relator r;
                r.kind = Relator::Kind::Multiply;
                r.i = i; r.j = j; r.k = k;
                out.push_back(r);
            }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            Relator r;
            r.kind = Relator::Kind::Torsion;
            r.i = i; r.j = j;
            out.push_back(r);
        }
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        Relator r;
        r.kind = Relator::Kind::DiagExpr;
        r.signs.assign(n, 1);
        for (int t = 0; t < n; ++t)
            if (mask & (1u << t)) r.signs[t] = -1;
        out.push_back(r);
    }
    return out;
}

Word rowmajor_shortcuts(const GroupElement& u) {
    Word w;
    for (int r = 0; r < u.n(); ++r)
        for (int c = 0; c < u.n(); ++c)
            if (r != c && !u(r, c).is_zero()) w.push_back(Letter::shortcut(r + 1, c + 1, u(r, c)));
    return w;
}

Word MacroMove::lhs(int n) const {
    (void)n;
    using L = Letter;
    switch (schema) {
    case Schema::Add: return {L::shortcut(i, j, x), L::shortcut(i, j, y)};
    case Schema::Mul:
        switch (form) {
        case MulForm::Comm:
            return {L::shortcut(i, j, x), L::shortcut(j, k, y), L::shortcut(i, j, -x), L::shortcut(j, k, -y)};
        case MulForm::Pass: return {L::shortcut(i, j, x), L::shortcut(j, k, y)};
        case MulForm::PassBack: return {L::shortcut(j, k, y), L::shortcut(i, j, x)};
        }
        break;
    case Schema::Commute: return {L::shortcut(i, j, x), L::shortcut(k, l, y)};
    case Schema::SwapConj: {
        Word w = s_word(i, j);
        w.push_back(L::shortcut(k, l, x));
        Word inv = invert_word(s_word(i, j));
        w.insert(w.end(), inv.begin(), inv.end());
        return w;
    }
    case Schema::DiagConj: return {L::diag(signs), L::shortcut(i, j, x), L::diag(signs)};
    case Schema::UnipotentRewrite: {
        int s = x.sign() < 0 ? -1 : 1;
        Int m = abs(x);
        Word w;
        if (m.is_small())
            for (int64_t t = 0; t < m.small(); ++t) w.push_back(L::elem(i, j, s));
        return w;
    }
    case Schema::ConjRebase: {
        Word w = gamma;
        w.push_back(L::shortcut(i, j, x));
        Word inv = invert_word(gamma);
        w.insert(w.end(), inv.begin(), inv.end());
        return w;
    }
    }
    return {};
}

Word MacroMove::rhs(int n) const {
    using L = Letter;
    switch (schema) {
    case Schema::Add: {
        Int s = x + y;
        if (s.is_zero()) return {};
        return {L::shortcut(i, j, s)};
    }
    case Schema::Mul:
        switch (form) {
        case MulForm::Comm: return {L::shortcut(i, k, x * y)};
        case MulForm::Pass: return {L::shortcut(j, k, y), L::shortcut(i, k, x * y), L::shortcut(i, j, x)};
        case MulForm::PassBack: return {L::shortcut(i, j, x), L::shortcut(j, k, y), L::shortcut(i, k, -(x * y))};
        }
        break;
    case Schema::Commute: return {L::shortcut(k, l, y), L::shortcut(i, j, x)};
    case Schema::SwapConj: {
        auto sigma = [&](int a) { return a == i ? j : (a == j ? i : a); };
        int flips = (k == i) + (l == i);
        return {L::shortcut(sigma(k), sigma(l), flips % 2 ? -x : x)};
    }
    case Schema::DiagConj: {
        int s = signs[i - 1] * signs[j - 1];
        return {L::shortcut(i, j, s < 0 ? -x : x)};
    }
    case Schema::UnipotentRewrite: return {L::shortcut(i, j, x)};
    case Schema::ConjRebase: return rowmajor_shortcuts(evaluate(lhs(n), n));
    }
    return {};
}

std::string MacroMove::check(int n) const {
    auto ok = [&](int a) { return idx_ok(a, n); };
    switch (schema) {
    case Schema::Add:
        if (!ok(i) || !ok(j) || i == j) return "add: bad index pair";
        return "";
    case Schema::Mul:
        if (!ok(i) || !ok(j) || !ok(k) || i == j || j == k || i == k) return "mul: indices not distinct";
        if (x.is_zero() || y.is_zero()) return "mul: zero coefficient";
        return "";
    case Schema::Commute:
        if (!ok(i) || !ok(j) || !ok(k) || !ok(l) || i == j || k == l) return "commute: bad index pair";
        if (i == l || j == k) return "commute: requires i != l and j != k";
        return "";
    case Schema::SwapConj:
        if (!ok(i) || !ok(j) || !ok(k) || !ok(l) || i == j || k == l) return "swap: bad index pair";
        return "";
    case Schema::DiagConj:
        if (static_cast<int>(signs.size()) != n) return "diag: dimension mismatch";
        if (!ok(i) || !ok(j) || i == j) return "diag: bad index pair";
        try {
            (void)Letter::diag(signs);
        } catch (const std::exception& e) {
            return std::string("diag: ") + e.what();
        }
        return "";
    case Schema::UnipotentRewrite:
        if (!ok(i) || !ok(j) || i == j) return "unipotent: bad index pair";
        if (x.is_zero() || !x.is_small() || std::abs(x.small()) > 4096) return "unipotent: exponent out of range";
        return "";
    case Schema::ConjRebase: {
        if (!ok(i) || !ok(j) || i == j) return "rebase: bad index pair";
        if (!is_plain(gamma)) return "rebase: conjugator must be plain";
        GroupElement u = evaluate(lhs(n), n);
        if (!(evaluate(rowmajor_shortcuts(u), n) == u)) return "rebase: conjugate is not a commuting product";
        return "";
    }
    }
    return "unknown schema";
}

Step Step::free_insert(size_t pos, Word u) {
    Step s;
    s.kind = Kind::FreeInsert;
    s.pos = pos;
    s.word = std::move(u);
    return s;
}

Step Step::free_delete(size_t pos, size_t len) {
    Step s;
    s.kind = Kind::FreeDelete;
    s.pos = pos;
    s.len = len;
    return s;
}

Step Step::apply_relator(size_t pos, Relator r, int rotation, bool inverted, int split) {
    Step s;
    s.kind = Kind::ApplyRelator;
    s.pos = pos;
    s.relator = std::move(r);
    s.rotation = rotation;
    s.inverted = inverted;
    s.split = split;
    return s;
}

Step Step::atomic_fill(size_t pos, size_t len) {
    Step s;
    s.kind = Kind::AtomicFill;
    s.pos = pos;
    s.len = len;
    return s;
}

Step Step::macro_move(size_t pos, MacroMove m) {
    Step s;
    s.kind = Kind::Macro;
    s.pos = pos;
    s.macro = std::move(m);
    return s;
}

uint64_t step_cost(const Step& s, const CostModel& cm) {
    switch (s.kind) {
    case Step::Kind::FreeInsert:
    case Step::Kind::FreeDelete: return 0;
    case Step::Kind::ApplyRelator:
    case Step::Kind::AtomicFill: return 1;
    case Step::Kind::Macro: {
        const MacroMove& m = s.macro;
        double base;
        if (m.schema == MacroMove::Schema::ConjRebase)
            base = static_cast<double>(m.gamma.size()) + m.x.log2_plus2();
        else
            base = m.x.log2_plus2() + m.y.log2_plus2();
        return static_cast<uint64_t>(std::ceil(cm.c_mm * base * base));
    }
    }
    return 0;
}

namespace {

template <class W>
void apply_to(W& w, const Step& s, int n) {
    switch (s.kind) {
    case Step::Kind::FreeInsert: {
        replace(w, s.pos, 0, concat(s.word, invert_word(s.word)));
        break;
    }
    case Step::Kind::FreeDelete:
    case Step::Kind::AtomicFill: replace(w, s.pos, s.len, Word{}); break;
    case Step::Kind::ApplyRelator: {
        Word u;
        Word by = relator_pieces(s, n, u);
        replace(w, s.pos, u.size(), by);
        break;
    }
    case Step::Kind::Macro: {
        Word l = s.macro.lhs(n), r = s.macro.rhs(n);
        if (s.macro.reverse) std::swap(l, r);
        replace(w, s.pos, l.size(), r);
        break;
    }
    }
}

}  // namespace

void apply_unchecked(Word& w, const Step& s, int n) { apply_to(w, s, n); }

Verifier::Verifier(int n, Word initial, CostModel cm) : n_(n), w_(std::move(initial)), cm_(cm) {
    res_.accepted = false;
}

bool Verifier::fail(const std::string& why) {
    ok_ = false;
    res_.failed_step = static_cast<long>(res_.move_count);
    res_.reason = why;
    return false;
}

bool Verifier::apply(const Step& s) {
    if (!ok_) return false;
    if (s.pos > w_.size()) return fail("position out of range");
    try {
        switch (s.kind) {
        case Step::Kind::FreeInsert:
            for (const auto& a : s.word)
                if (a.kind == Letter::Kind::Diag && a.dn != n_) return fail("free insert: diag dimension");
            break;
        case Step::Kind::FreeDelete: {
            if (s.len == 0 || s.len % 2 || s.pos + s.len > w_.size()) return fail("free delete: bad length");
            size_t h = s.len / 2;
            for (size_t t = 0; t < h; ++t)
                if (!are_inverse(w_[s.pos + h - 1 - t], w_[s.pos + h + t]))
                    return fail("free delete: subword is not u u^-1");
            break;
        }
        case Step::Kind::ApplyRelator: {
            std::string e = s.relator.check(n_);
            if (!e.empty()) return fail("relator: " + e);
            int len = static_cast<int>(s.relator.word(n_).size());
            if (s.rotation < 0 || s.rotation >= len || s.split < 0 || s.split > len)
                return fail("relator: bad rotation or split");
            Word u;
            relator_pieces(s, n_, u);
            if (!matches(w_, s.pos, u)) return fail("relator: subword does not match");
            break;
        }
        case Step::Kind::AtomicFill: {
            if (s.len == 0 || static_cast<int>(s.len) > cm_.L0) return fail("atomic fill: length exceeds L0");
            if (s.pos + s.len > w_.size()) return fail("atomic fill: out of range");
            GroupElement g = GroupElement::identity(n_);
            Word piece;
            for (size_t t = s.pos; t < s.pos + s.len; ++t) {
                if (!w_[t].is_plain()) return fail("atomic fill: shortcut letter");
                piece.push_back(w_[t]);
            }
            evaluate_into(g, piece, 0, piece.size());
            if (!g.is_identity()) return fail("atomic fill: subword is not null");
            break;
        }
        case Step::Kind::Macro: {
            const MacroMove& m = s.macro;
            std::string e = m.check(n_);
            if (!e.empty()) return fail("macro: " + e);
            if (m.schema == MacroMove::Schema::UnipotentRewrite && abs(m.x) > Int(cm_.L0))
                return fail("macro: unipotent exponent exceeds L0");
            if (m.schema == MacroMove::Schema::ConjRebase && static_cast<int>(m.gamma.size()) > cm_.L0)
                return fail("macro: conjugator exceeds L0");
            Word l = m.lhs(n_), r = m.rhs(n_);
            if (m.reverse) std::swap(l, r);
            if (!matches(w_, s.pos, l)) return fail("macro: left fragment does not match");
            if (!(evaluate(l, n_) == evaluate(r, n_))) return fail("macro: fragments evaluate differently");
            ++res_.macro_count;
            break;
        }
        }
    } catch (const std::exception& ex) {
        return fail(std::string("exception: ") + ex.what());
    }
    apply_to(w_, s, n_);
    res_.total_cost += step_cost(s, cm_);
    ++res_.move_count;
    return true;
}

VerifyResult Verifier::finish() const {
    VerifyResult r = res_;
    if (ok_ && !w_.empty()) {
        r.reason = "final word is not empty";
        r.failed_step = static_cast<long>(r.move_count);
    }
    r.accepted = ok_ && w_.empty();
    return r;
}

VerifyResult verify(const Certificate& c) {
    Verifier v(c.n, c.initial, c.cost_model);
    for (const auto& s : c.steps)
        if (!v.apply(s)) break;
    VerifyResult r = v.finish();
    if (r.accepted && r.total_cost != c.total_cost) {
        r.accepted = false;
        r.reason = "declared total cost " + std::to_string(c.total_cost) + " differs from replayed " +
                   std::to_string(r.total_cost);
    }
    return r;
}

}  // namespace slz
