#include "slz/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "slz/shortcut.hpp"

namespace slz {

const char* family_name(Family f) {
    switch (f) {
    case Family::ConjRelators: return "conj-relators";
    case Family::ShortcutUnary: return "shortcut-unary";
    case Family::Commutators: return "commutators";
    case Family::DeepCusp: return "deep-cusp";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "conj-relators" || s == "a") return Family::ConjRelators;
    if (s == "shortcut-unary" || s == "b") return Family::ShortcutUnary;
    if (s == "commutators" || s == "c") return Family::Commutators;
    if (s == "deep-cusp" || s == "d") return Family::DeepCusp;
    throw std::invalid_argument("unknown family: " + s);
}

uint64_t run_seed(uint64_t base, Family f, size_t ell, int rep) {
    // splitmix64 over the packed tuple
    uint64_t z = base ^ (static_cast<uint64_t>(f) << 56) ^ (static_cast<uint64_t>(ell) << 16) ^ static_cast<uint64_t>(rep);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Letter random_letter(Rng& rng, int n) {
    int i = uniform(rng, 1, n), j = uniform(rng, 1, n - 1);
    if (j >= i) ++j;
    return Letter::elem(i, j, uniform(rng, 0, 1) ? 1 : -1);
}

// Freely reduced random plain word.
Word random_reduced(Rng& rng, int n, size_t len) {
    Word w;
    while (w.size() < len) {
        Letter a = random_letter(rng, n);
        if (!w.empty() && are_inverse(w.back(), a)) continue;
        w.push_back(a);
    }
    return w;
}

Word conj_relators(int n, size_t ell, Rng& rng) {
    const std::vector<Relator> rels = relators(n);
    Word w;
    while (w.size() < ell) {
        Word r = rels[uniform(rng, 0, static_cast<int>(rels.size()) - 1)].word(n);
        const int rot = uniform(rng, 0, static_cast<int>(r.size()) - 1);
        std::rotate(r.begin(), r.begin() + rot, r.end());
        if (uniform(rng, 0, 1)) r = invert_word(r);
        Word g = random_reduced(rng, n, uniform(rng, 4, 8));
        w = concat(w, concat(concat(g, r), invert_word(g)));
    }
    return w;
}

Word shortcut_unary(int n, size_t ell, Rng& rng) {
    int i = uniform(rng, 1, n), j = uniform(rng, 1, n - 1);
    if (j >= i) ++j;
    const ShortcutScheme& sc = ShortcutScheme::default_scheme();
    // Largest N with |shortcut_word(N)| + N <= ell; below the plain threshold the word is freely trivial.
    long best = 0;
    Word best_w;
    for (long N = sc.small_threshold() + 1; N < static_cast<long>(ell); ++N) {
        Word s = shortcut_word(i, j, Int(N));
        if (s.size() + N <= ell) {
            best = N;
            best_w = std::move(s);
        }
    }
    if (best == 0) throw std::invalid_argument("shortcut-unary: ell too small for a nontrivial shortcut");
    for (long t = 0; t < best; ++t) best_w.push_back(Letter::elem(i, j, -1));
    return best_w;
}

Word commutator(int n, size_t ell, Rng& rng) {
    // Random walk with entries kept bounded so the word stays in a compact region.
    const Int bound(1000);
    const size_t len = std::max<size_t>(1, ell / 4);
    Word u;
    GroupElement g = GroupElement::identity(n);
    while (u.size() < len) {
        Letter a = random_letter(rng, n);
        if (!u.empty() && are_inverse(u.back(), a)) continue;
        GroupElement h = g;
        h.right_mul_elementary(a.i, a.j, Int(a.sign));
        if (norm_inf(h) > bound) continue;
        g = std::move(h);
        u.push_back(a);
    }
    Word ui = invert_word(u);
    return concat(concat(u, ui), concat(ui, u));
}

Int random_bits(Rng& rng, int bits) {
    // Top bit set so the magnitude is exactly `bits` bits.
    mpz_class z = 1;
    for (int b = 1; b < bits; ++b) z = z * 2 + static_cast<int>(rng() & 1);
    return Int(z);
}

Word deep_cusp(int n, size_t ell, Rng& rng) {
    int i = uniform(rng, 1, n), j = uniform(rng, 1, n - 1);
    if (j >= i) ++j;
    // Largest bit size whose three shortcut words fit in ell.
    for (int bits = 62; bits >= 2; --bits) {
        Rng trial = rng;
        Int x = random_bits(trial, bits), y = random_bits(trial, bits);
        if (trial() & 1) y = -y;
        Int z = -(x + y);
        if (z.is_zero()) continue;
        Word w = concat(concat(shortcut_word(i, j, x), shortcut_word(i, j, y)), shortcut_word(i, j, z));
        if (w.size() <= ell) return w;
    }
    throw std::invalid_argument("deep-cusp: ell too small");
}

}  // namespace

Word generate_word(Family f, int n, size_t ell, uint64_t seed) {
    if (n < 3) throw std::invalid_argument("generate_word: n >= 3 required");
    Rng rng(seed);
    switch (f) {
    case Family::ConjRelators: return conj_relators(n, ell, rng);
    case Family::ShortcutUnary: return shortcut_unary(n, ell, rng);
    case Family::Commutators: return commutator(n, ell, rng);
    case Family::DeepCusp: return deep_cusp(n, ell, rng);
    }
    return {};
}

FillOptions family_options(Family f, FillOptions base) {
    if (f == Family::Commutators) base.free_reduce_shortcut = false;
    return base;
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec,
                                          const std::function<void(const ExperimentRow&)>& on_row) {
    std::vector<ExperimentRow> rows;
    const FillOptions opt = family_options(spec.family, spec.fill);
    for (size_t ell : spec.ells)
        for (int rep = 0; rep < spec.reps; ++rep) {
            ExperimentRow r;
            r.family = spec.family;
            r.seed = run_seed(spec.seed, spec.family, ell, rep);
            r.ell = ell;
            r.report = fill_word(generate_word(spec.family, spec.n, ell, r.seed), spec.n, opt);
            r.report.certificate.reset();
            r.report.triangle_costs.clear();
            if (on_row) on_row(r);
            rows.push_back(std::move(r));
        }
    return rows;
}

std::string csv_header() {
    return std::string(kCsvSchema) +
           "\nfamily,seed,ell,length,triangles,nontrivial_triangles,collar_cost,total_cost,move_count,macro_count,verified,wall_ms";
}

std::string csv_row(const ExperimentRow& r) {
    const FillingReport& f = r.report;
    std::ostringstream os;
    os << family_name(r.family) << ',' << r.seed << ',' << r.ell << ',' << f.length << ',' << f.triangles << ','
       << f.nontrivial_triangles << ',' << f.collar_cost << ',' << f.total_cost << ',' << f.move_count << ','
       << f.macro_count << ',' << (f.verified ? 1 : 0) << ',' << static_cast<long long>(std::llround(f.wall_ms));
    return os.str();
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const size_t m = std::min(x.size(), y.size());
    for (size_t t = 0; t < m; ++t) {
        sx += x[t];
        sy += y[t];
        sxx += x[t] * x[t];
        sxy += x[t] * y[t];
    }
    double den = m * sxx - sx * sx;
    if (m < 2 || std::abs(den) < 1e-12) return std::nan("");
    return (m * sxy - sx * sy) / den;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (size_t t = 0; t < x.size() && t < y.size(); ++t)
        if (x[t] > 0 && y[t] > 0) {
            lx.push_back(std::log(x[t]));
            ly.push_back(std::log(y[t]));
        }
    return linear_slope(lx, ly);
}

}  // namespace slz
